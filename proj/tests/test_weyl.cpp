#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "multient/catalog.hpp"
#include "multient/choi.hpp"
#include "multient/errors.hpp"
#include "multient/measures.hpp"
#include "multient/weyl.hpp"
#include "oracles.hpp"

using namespace multient;

namespace {

constexpr double kQuarter = std::numbers::pi / 4.0;

PureState x_state(const WeylPoint& p) { return op_to_state(cartan_unitary(p)); }

// exp[-i(x XX + y YY + z ZZ)] by Hermitian eigen-decomposition, as an oracle
// for the explicit matrix.
CMatrix cartan_by_exponential(const WeylPoint& p) {
  const cplx i(0.0, 1.0);
  CMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, -i, i, 0;
  sz << 1, 0, 0, -1;
  auto kron = [](const CMatrix& a, const CMatrix& b) {
    CMatrix out(4, 4);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) out.block(r * 2, c * 2, 2, 2) = a(r, c) * b;
    }
    return out;
  };
  const CMatrix h = p.x * kron(sx, sx) + p.y * kron(sy, sy) + p.z * kron(sz, sz);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  CMatrix phase = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) phase(k, k) = std::exp(-i * es.eigenvalues()(k));
  return es.eigenvectors() * phase * es.eigenvectors().adjoint();
}

std::array<double, 3> sorted_pair_purities(const PureState& s) {
  std::array<double, 3> out{purity(partial_trace(s, {0, 1})), purity(partial_trace(s, {0, 2})),
                            purity(partial_trace(s, {0, 3}))};
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("cartan unitary") {
  CHECK((cartan_unitary({0, 0, 0}).matrix() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
  for (const auto& p : sample_chamber(50, 8)) {
    const CMatrix u = cartan_unitary(p).matrix();
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK((u - cartan_by_exponential(p)).cwiseAbs().maxCoeff() < 1e-12);
  }
  CHECK_THROWS_AS(cartan_unitary({0.1, 0.2, 0.0}), InputError);
  CHECK_THROWS_AS(cartan_unitary({1.0, 0.0, 0.0}), InputError);
}

TEST_CASE("closed-form GME-AME examples") {
  CHECK(std::abs(gme_ame_closed_form({0, 0, 0})) < 1e-15);
  CHECK(std::abs(gme_ame_closed_form({kQuarter, 0, 0}) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(gme_ame_closed_form({kQuarter, kQuarter, kQuarter})) < 1e-12);
  CHECK(std::abs(gme_ame(x_state({kQuarter, 0, 0})) - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("edge formulas") {
  CHECK(std::abs(edge_formula(WeylEdge::LocalCnot, kQuarter) - 2.0 / 3.0) < 1e-12);
  CHECK(std::abs(edge_formula(WeylEdge::LocalCnot, 0.0)) < 1e-15);
  CHECK(std::abs(edge_formula(WeylEdge::SwapDcnot, 0.0) - 2.0 / 3.0) < 1e-15);
  CHECK(std::abs(edge_formula(WeylEdge::SwapDcnot, kQuarter)) < 1e-12);
  CHECK_THROWS_AS(edge_formula(WeylEdge::LocalCnot, -0.1), InputError);
  CHECK_THROWS_AS(edge_formula(WeylEdge::LocalCnot, 1.0), InputError);
  for (int k = 0; k < 100; ++k) {
    const double t = kQuarter * k / 99.0;
    CHECK(std::abs(gme_ame_closed_form({t, 0, 0}) - edge_formula(WeylEdge::LocalCnot, t)) < 1e-12);
    CHECK(std::abs(gme_ame_closed_form({kQuarter, kQuarter, t}) - edge_formula(WeylEdge::SwapDcnot, t)) < 1e-12);
  }
  // The DCNOT vertex agrees with the numeric value of the dcnot operator state.
  CHECK(std::abs(gme_ame(named_state({"dcnot", {}, 0, 0})) - 2.0 / 3.0) < 1e-12);
}

TEST_CASE("closed-form Scott examples") {
  CHECK(std::abs(scott_f({kQuarter, 0, 0}) - 8.0) < 1e-12);
  CHECK(std::abs(scott_closed_form({kQuarter, 0, 0}) - 8.0 / 9.0) < 1e-12);
  CHECK(std::abs(scott_closed_form({0, 0, 0}) - scott(op_to_state(BipartiteOperator::identity(2)), 2)) < 1e-10);
  CHECK(std::abs(scott_closed_form({kQuarter, kQuarter, kQuarter}) -
                 scott(op_to_state(BipartiteOperator::swap(2)), 2)) < 1e-10);
}

TEST_CASE("closed forms agree with the numeric pipeline on 1000 samples") {
  double worst_gme = 0.0;
  double worst_scott = 0.0;
  for (const auto& p : sample_chamber(1000, 2024)) {
    const auto s = x_state(p);
    worst_gme = std::max(worst_gme, std::abs(gme_ame_closed_form(p) - gme_ame(s)));
    worst_scott = std::max(worst_scott, std::abs(scott_closed_form(p) - scott(s, 2)));
    for (int q = 0; q < 4; ++q) {
      CHECK((partial_trace(s, {q}).matrix() - CMatrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  CHECK(worst_gme < 1e-10);
  CHECK(worst_scott < 1e-10);
}

TEST_CASE("quartic Scott polynomial variant differs from the numeric value") {
  // Kept for reference only; the corrected polynomial is the one in use.
  double worst = 0.0;
  for (const auto& p : sample_chamber(200, 5)) {
    worst = std::max(worst, std::abs(4.0 / 3.0 - scott_f_quartic(p) / 18.0 - scott(x_state(p), 2)));
  }
  CHECK(worst > 1e-3);
}

TEST_CASE("chamber sampling") {
  const auto one = sample_chamber(1, 4);
  REQUIRE(one.size() == 1);
  CHECK(in_chamber(one.front()));
  const auto a = sample_chamber(1000, 6);
  const auto b = sample_chamber(1000, 6);
  REQUIRE(a.size() == 1000);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].x == b[k].x);
    CHECK(a[k].y == b[k].y);
    CHECK(a[k].z == b[k].z);
    CHECK(0.0 <= a[k].x);
    CHECK(std::abs(a[k].z) <= a[k].y);
    CHECK(a[k].y <= a[k].x);
    CHECK(a[k].x <= kQuarter);
  }
  CHECK_THROWS_AS(sample_chamber(0, 1), InputError);
  CHECK(sample_chamber(10, 1)[0].x != sample_chamber(10, 2)[0].x);
}

TEST_CASE("G_abcd family matches the Weyl family") {
  const cplx i(0.0, 1.0);
  for (const auto& p : sample_chamber(40, 77)) {
    const ParamMap params{{"a", std::exp(-i * (p.x - p.y + p.z))},
                          {"b", std::exp(-i * (-p.x + p.y + p.z))},
                          {"c", std::exp(-i * (p.x + p.y - p.z))},
                          {"d", std::exp(-i * (-p.x - p.y - p.z))}};
    const auto g = named_state({"g_abcd", params, 0, 0});
    const auto x = x_state(p);
    const auto pg = sorted_pair_purities(g);
    const auto px = sorted_pair_purities(x);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(pg[k] - px[k]) < 1e-12);
    CHECK(std::abs(gme_ame(g) - gme_ame(x)) < 1e-12);
  }
}
