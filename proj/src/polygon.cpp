#include "multient/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Dense>

#include "multient/errors.hpp"
#include "multient/rng.hpp"

namespace multient {

namespace {

constexpr double kVanishingEntropy = 1e-9;
constexpr double kClampBand = 1e-9;
constexpr double kDistinctGamma = 1e-6;

// Gamma slots per party: party i touches the three gammas containing i.
constexpr std::array<std::array<int, 3>, 4> kFaces = {{{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 4, 5}}};
// Radical products in the order (12·34, 13·24, 14·23).
constexpr std::array<std::array<int, 2>, 3> kProducts = {{{0, 5}, {1, 4}, {2, 3}}};

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

// Unknowns u (gamma = u^2) and w (lambda = w^2).
Vec7 residual(const EntropyVector& ev, const Vec7& v) {
  Vec7 r;
  for (int f = 0; f < 4; ++f) {
    double s = 0.0;
    for (int g : kFaces[f]) s += v(g) * v(g);
    r(f) = s - ev.singles[f];
  }
  std::array<double, 3> prod{};
  for (int p = 0; p < 3; ++p) prod[p] = std::abs(v(kProducts[p][0]) * v(kProducts[p][1]));
  const double lambda = v(6) * v(6);
  for (int p = 0; p < 3; ++p) {
    const double sum = prod[0] + prod[1] + prod[2] - 2.0 * prod[p];
    r(4 + p) = sum - lambda * ev.pairs[p];
  }
  return r;
}

Mat7 jacobian(const EntropyVector& ev, const Vec7& v) {
  Mat7 j = Mat7::Zero();
  for (int f = 0; f < 4; ++f) {
    for (int g : kFaces[f]) j(f, g) = 2.0 * v(g);
  }
  auto sgn = [](double x) { return x < 0.0 ? -1.0 : 1.0; };
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) {
      const int a = kProducts[q][0];
      const int b = kProducts[q][1];
      const double sign = (p == q) ? -1.0 : 1.0;
      j(4 + p, a) += sign * sgn(v(a)) * std::abs(v(b));
      j(4 + p, b) += sign * sgn(v(b)) * std::abs(v(a));
    }
    j(4 + p, 6) = -2.0 * v(6) * ev.pairs[p];
  }
  return j;
}

struct LmOutcome {
  Vec7 v;
  double residual;
};

LmOutcome levenberg_marquardt(const EntropyVector& ev, Vec7 v, const SolverSettings& cfg) {
  Vec7 r = residual(ev, v);
  double cost = r.squaredNorm();
  double mu = 1e-3;
  for (int it = 0; it < cfg.max_iterations && std::sqrt(cost) >= cfg.residual_tol; ++it) {
    const Mat7 j = jacobian(ev, v);
    const Mat7 jtj = j.transpose() * j;
    const Vec7 grad = j.transpose() * r;
    bool improved = false;
    while (mu < 1e16) {
      Mat7 a = jtj;
      for (int k = 0; k < 7; ++k) a(k, k) += mu * std::max(jtj(k, k), 1e-12);
      const Vec7 step = a.ldlt().solve(-grad);
      const Vec7 trial = v + step;
      const Vec7 rt = residual(ev, trial);
      const double ct = rt.squaredNorm();
      if (std::isfinite(ct) && ct < cost) {
        v = trial;
        r = rt;
        cost = ct;
        mu = std::max(mu / 3.0, 1e-15);
        improved = true;
        break;
      }
      mu *= 4.0;
    }
    if (!improved) break;
  }
  return {v, std::sqrt(cost)};
}

// Uniform gammas projected onto the face equations (least squares), lambda
// from the first radical equation.
Vec7 seeded_start(const EntropyVector& ev, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  Eigen::Matrix<double, 6, 1> g;
  for (int k = 0; k < 6; ++k) g(k) = uniform01(engine);

  Eigen::Matrix<double, 4, 6> c = Eigen::Matrix<double, 4, 6>::Zero();
  Eigen::Matrix<double, 4, 1> e;
  for (int f = 0; f < 4; ++f) {
    for (int s : kFaces[f]) c(f, s) = 1.0;
    e(f) = ev.singles[f];
  }
  const Eigen::Matrix<double, 4, 4> cct = c * c.transpose();
  g -= c.transpose() * cct.ldlt().solve(c * g - e);
  for (int k = 0; k < 6; ++k) g(k) = std::max(g(k), 1e-6);

  const double lhs = -std::sqrt(g(0) * g(5)) + std::sqrt(g(1) * g(4)) + std::sqrt(g(2) * g(3));
  double lambda = ev.pairs[0] > 0.0 ? lhs / ev.pairs[0] : 0.0;
  if (!(lambda > 1e-6)) lambda = 0.5;

  Vec7 v;
  for (int k = 0; k < 6; ++k) v(k) = std::sqrt(g(k));
  v(6) = std::sqrt(lambda);
  return v;
}

bool all_zero(const EntropyVector& ev) {
  return std::all_of(ev.singles.begin(), ev.singles.end(), [](double x) { return x == 0.0; }) &&
         std::all_of(ev.pairs.begin(), ev.pairs.end(), [](double x) { return x == 0.0; });
}

}  // namespace

EntropyVector entropy_vector(const PureState& state) {
  if (state.parties() != 4 || state.local_dim() != 2) {
    throw InputError("entropy_vector: four-qubit state required");
  }
  EntropyVector ev;
  for (int i = 0; i < 4; ++i) ev.singles[i] = von_neumann_entropy(partial_trace(state, {i}));
  const PartySet pairs[] = {{0, 1}, {0, 2}, {0, 3}};
  for (int p = 0; p < 3; ++p) ev.pairs[p] = von_neumann_entropy(partial_trace(state, pairs[p]));
  return ev;
}

std::array<double, 7> polygon_residuals(const EntropyVector& ev, const Gammas& gammas, double lambda) {
  Vec7 v;
  for (int k = 0; k < 6; ++k) v(k) = std::sqrt(std::max(gammas[k], 0.0));
  v(6) = std::sqrt(std::max(lambda, 0.0));
  const Vec7 r = residual(ev, v);
  std::array<double, 7> out{};
  for (int k = 0; k < 7; ++k) out[k] = r(k);
  return out;
}

PolygonSolution solve_polygon_system(const EntropyVector& ev, const SolverSettings& cfg) {
  if (all_zero(ev)) return PolygonSolution{};

  std::optional<PolygonSolution> accepted;
  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < cfg.max_restarts; ++start) {
    const Vec7 v0 = seeded_start(ev, mix_seed(cfg.seed, static_cast<std::uint64_t>(start)));
    const auto out = levenberg_marquardt(ev, v0, cfg);
    best = std::min(best, out.residual);
    if (!(out.residual < cfg.residual_tol)) continue;

    Gammas g{};
    for (int k = 0; k < 6; ++k) g[k] = out.v(k) * out.v(k);
    if (!accepted) {
      accepted = PolygonSolution{g, out.v(6) * out.v(6), out.residual, start, false, {}};
      if (!cfg.probe_ambiguity) break;
      continue;
    }
    auto differs = [&](const Gammas& other) {
      double diff = 0.0;
      for (int k = 0; k < 6; ++k) diff = std::max(diff, std::abs(other[k] - g[k]));
      return diff > kDistinctGamma;
    };
    if (differs(accepted->gammas) &&
        std::all_of(accepted->alternatives.begin(), accepted->alternatives.end(), differs)) {
      accepted->alternatives.push_back(g);
      accepted->ambiguous = true;
    }
  }
  if (!accepted) {
    throw SolverError("polygon solver: no start converged below the residual tolerance", best);
  }
  return *accepted;
}

PolygonTerms polygon_from_gammas(const Gammas& g) {
  const double a = std::sqrt(g[0] * g[5]);
  const double b = std::sqrt(g[1] * g[4]);
  const double c = std::sqrt(g[2] * g[3]);
  PolygonTerms t;
  t.r = {a + b + c, -a + b + c, a - b + c, a + b - c};
  for (double& ri : t.r) {
    if (ri < -kClampBand) throw NumericError("polygon: negative R coefficient beyond round-off");
    if (ri < 0.0) ri = 0.0;
  }
  t.s = 2.0 * (g[0] + g[1] + g[2] + g[3] + g[4] + g[5]);
  t.volume = std::sqrt(2.0) / 3.0 * std::sqrt(t.s) * std::pow(t.r[0] * t.r[1] * t.r[2] * t.r[3], 0.25);
  t.value = std::pow(3.0, 7.0 / 6.0) / 2.0 * std::pow(t.volume, 2.0 / 3.0);
  return t;
}

PolygonResult polygon_measure_detailed(const PureState& state, const SolverSettings& cfg) {
  const EntropyVector ev = entropy_vector(state);
  const bool vanishing =
      std::any_of(ev.singles.begin(), ev.singles.end(), [](double x) { return x < kVanishingEntropy; }) ||
      std::any_of(ev.pairs.begin(), ev.pairs.end(), [](double x) { return x < kVanishingEntropy; });
  if (vanishing) return {};
  PolygonSolution sol = solve_polygon_system(ev, cfg);
  const double value = polygon_from_gammas(sol.gammas).value;
  return {value, std::move(sol)};
}

double polygon_measure(const PureState& state, const SolverSettings& cfg) {
  return polygon_measure_detailed(state, cfg).value;
}

}  // namespace multient
