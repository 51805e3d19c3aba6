#pragma once

// Two-qubit gates in Cartan form X(x,y,z) = exp[-i(x XX + y YY + z ZZ)] over
// the Weyl chamber 0 <= |z| <= y <= x <= pi/4, with closed forms for the
// GME-AME and Scott (k = 2) values of the operator state |X>.

#include <cstdint>
#include <vector>

#include "multient/choi.hpp"

namespace multient {

struct WeylPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Chamber test with an absolute slack of 1e-12 for points on the faces.
bool in_chamber(const WeylPoint& p);

// Throws InputError outside the chamber.
BipartiteOperator cartan_unitary(const WeylPoint& p);

double gme_ame_closed_form(const WeylPoint& p);

// Sct_2(|X>) = 4/3 - f(x,y,z)/18.
double scott_closed_form(const WeylPoint& p);
double scott_f(const WeylPoint& p);

// Variant of f carrying cos^4(x-y) and sin^4(x+y) terms. It disagrees with
// the numeric Scott value away from the x = y = 0 edge; kept for comparison.
double scott_f_quartic(const WeylPoint& p);

enum class WeylEdge {
  LocalCnot,  // (t, 0, 0): LOCAL -> CNOT, value (1 - cos 4t)/3
  SwapDcnot,  // (pi/4, pi/4, t): DCNOT at t = 0 -> SWAP at pi/4, value (cos 4t + 1)/3
};

// Throws InputError for t outside [0, pi/4].
double edge_formula(WeylEdge edge, double t);
WeylPoint edge_point(WeylEdge edge, double t);

// Uniform rejection sampling from the bounding box [0,pi/4]^2 x [-pi/4,pi/4].
// Throws InputError for count < 1.
std::vector<WeylPoint> sample_chamber(std::size_t count, std::uint64_t seed);

}  // namespace multient
