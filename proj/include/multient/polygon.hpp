#pragma once

// Four-qubit polygon (simplex volume) measure.
//
// Unknowns: six face-area weights gamma_ij (order 12, 13, 14, 23, 24, 34)
// and a scale lambda, fixed by
//   gamma_ij + gamma_ik + gamma_il = E_{i|jkl}                     (4 eqs)
//   -sqrt(g_ab g_cd) + sqrt(g_ac g_bd) + sqrt(g_ad g_bc) = lambda E_{ab|cd}
// for ab|cd in {12|34, 13|24, 14|23}, the negative term always pairing with
// the named bipartition. Then with R0..R3 and S built from the gammas,
//   V = sqrt(2)/3 S^(1/2) (R0 R1 R2 R3)^(1/4),  P = 3^(7/6)/2 V^(2/3).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "multient/state.hpp"

namespace multient {

struct EntropyVector {
  std::array<double, 4> singles{};  // E_{i|jkl}, bits
  std::array<double, 3> pairs{};    // E_{12|34}, E_{13|24}, E_{14|23}, bits
};

struct SolverSettings {
  int max_restarts = 32;
  std::uint64_t seed = 0;
  double residual_tol = 1e-10;
  int max_iterations = 500;
  // Keep running the remaining starts after the first acceptance and record
  // distinct converged solutions.
  bool probe_ambiguity = true;
};

using Gammas = std::array<double, 6>;

struct PolygonSolution {
  Gammas gammas{};
  double lambda = 0.0;
  double residual = 0.0;
  int start = -1;  // index of the accepting start, -1 for the zero short-circuit
  bool ambiguous = false;
  std::vector<Gammas> alternatives;  // further distinct converged gammas
};

// Throws InputError unless the state has four qubits.
EntropyVector entropy_vector(const PureState& state);

// The seven residuals (face equations first) at (gammas, lambda).
std::array<double, 7> polygon_residuals(const EntropyVector& ev, const Gammas& gammas, double lambda);

// Throws SolverError (carrying the best residual) when no start converges.
PolygonSolution solve_polygon_system(const EntropyVector& ev, const SolverSettings& cfg = {});

struct PolygonTerms {
  std::array<double, 4> r{};  // R0..R3 after clamping
  double s = 0.0;
  double volume = 0.0;
  double value = 0.0;  // P
};

// R_i in [-1e-9, 0) are clamped to 0; anything lower throws NumericError.
PolygonTerms polygon_from_gammas(const Gammas& gammas);

struct PolygonResult {
  double value = 0.0;
  std::optional<PolygonSolution> solution;  // empty when short-circuited to 0
};

// 0 whenever a single-party or pair entropy is below 1e-9.
PolygonResult polygon_measure_detailed(const PureState& state, const SolverSettings& cfg = {});
double polygon_measure(const PureState& state, const SolverSettings& cfg = {});

}  // namespace multient
