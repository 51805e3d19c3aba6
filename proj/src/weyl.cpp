#include "multient/weyl.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "multient/errors.hpp"
#include "multient/rng.hpp"

namespace multient {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
constexpr double kSlack = 1e-12;

double sq(double v) { return v * v; }

}  // namespace

bool in_chamber(const WeylPoint& p) {
  return std::abs(p.z) <= p.y + kSlack && p.y <= p.x + kSlack && p.x <= kQuarterPi + kSlack &&
         p.y >= -kSlack;
}

BipartiteOperator cartan_unitary(const WeylPoint& p) {
  if (!in_chamber(p)) throw InputError("cartan_unitary: point outside the Weyl chamber");
  const double cm = std::cos(p.x - p.y);
  const double cp = std::cos(p.x + p.y);
  const double sm = std::sin(p.x - p.y);
  const double sp = std::sin(p.x + p.y);
  const cplx em = std::polar(1.0, -p.z);
  const cplx ep = std::polar(1.0, p.z);
  const cplx i(0.0, 1.0);
  CMatrix x = CMatrix::Zero(4, 4);
  x(0, 0) = em * cm;
  x(0, 3) = -i * em * sm;
  x(1, 1) = ep * cp;
  x(1, 2) = -i * ep * sp;
  x(2, 1) = -i * ep * sp;
  x(2, 2) = ep * cp;
  x(3, 0) = -i * em * sm;
  x(3, 3) = em * cm;
  return BipartiteOperator(2, std::move(x));
}

double gme_ame_closed_form(const WeylPoint& p) {
  const double cm = std::cos(p.x - p.y);
  const double cp = std::cos(p.x + p.y);
  const double sm = std::sin(p.x - p.y);
  const double sp = std::sin(p.x + p.y);
  const double c2z = std::cos(2.0 * p.z);
  const double s2z = std::sin(2.0 * p.z);
  const double first = 1.0 - (sq(sq(cm) + sq(cp)) + sq(sq(sp) + sq(sm)) + sq(2.0 * cm * cp * c2z) +
                              sq(2.0 * sp * sm * c2z)) / 8.0;
  const double second = 1.0 - (sq(sq(cm) + sq(sp)) + sq(sq(cp) + sq(sm)) + sq(2.0 * cm * sp * s2z) +
                               sq(2.0 * cp * sm * s2z)) / 8.0;
  return 16.0 / 9.0 * first * second;
}

double scott_f(const WeylPoint& p) {
  const double cm = std::cos(p.x - p.y);
  const double cp = std::cos(p.x + p.y);
  const double sm = std::sin(p.x - p.y);
  const double sp = std::sin(p.x + p.y);
  const double s2s2 = std::sin(2.0 * p.x) * std::sin(2.0 * p.y);
  return 2.0 + sq(sq(cm) + sq(cp)) + sq(-1.0 + s2s2) + sq(1.0 + s2s2) + sq(sq(sm) + sq(sp)) +
         4.0 * sq(std::cos(2.0 * p.z)) * (sq(cm) * sq(cp) + sq(sp) * sq(sm)) -
         (-2.0 + std::cos(4.0 * p.x) + std::cos(4.0 * p.y)) * sq(std::sin(2.0 * p.z));
}

double scott_f_quartic(const WeylPoint& p) {
  const double cm = std::cos(p.x - p.y);
  const double cp = std::cos(p.x + p.y);
  const double sm = std::sin(p.x - p.y);
  const double sp = std::sin(p.x + p.y);
  const double s2s2 = std::sin(2.0 * p.x) * std::sin(2.0 * p.y);
  return 2.0 + 4.0 * sq(sq(cm)) + sq(-1.0 + s2s2) + sq(1.0 + s2s2) + sq(sq(sm) + sq(sp)) +
         4.0 * sq(std::cos(2.0 * p.z)) * (sq(cm) * sq(cp) + sq(sq(sp))) -
         (-2.0 + std::cos(4.0 * p.x) + std::cos(4.0 * p.y)) * sq(std::sin(2.0 * p.z));
}

double scott_closed_form(const WeylPoint& p) { return 4.0 / 3.0 - scott_f(p) / 18.0; }

double edge_formula(WeylEdge edge, double t) {
  if (t < -kSlack || t > kQuarterPi + kSlack) throw InputError("edge_formula: t must lie in [0, pi/4]");
  switch (edge) {
    case WeylEdge::LocalCnot: return (1.0 - std::cos(4.0 * t)) / 3.0;
    case WeylEdge::SwapDcnot: return (std::cos(4.0 * t) + 1.0) / 3.0;
  }
  return 0.0;
}

WeylPoint edge_point(WeylEdge edge, double t) {
  switch (edge) {
    case WeylEdge::LocalCnot: return {t, 0.0, 0.0};
    case WeylEdge::SwapDcnot: return {kQuarterPi, kQuarterPi, t};
  }
  return {};
}

std::vector<WeylPoint> sample_chamber(std::size_t count, std::uint64_t seed) {
  if (count < 1) throw InputError("sample_chamber: count must be >= 1");
  std::mt19937_64 engine(seed);
  std::vector<WeylPoint> out;
  out.reserve(count);
  while (out.size() < count) {
    WeylPoint p;
    p.x = kQuarterPi * uniform01(engine);
    p.y = kQuarterPi * uniform01(engine);
    p.z = kQuarterPi * (2.0 * uniform01(engine) - 1.0);
    if (std::abs(p.z) <= p.y && p.y <= p.x) out.push_back(p);
  }
  return out;
}

}  // namespace multient
