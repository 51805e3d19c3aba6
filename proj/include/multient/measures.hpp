#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "multient/choi.hpp"
#include "multient/polygon.hpp"
#include "multient/state.hpp"

namespace multient {

// Canonical bipartitions entering the GME-AME product. For every size
// l < n/2 all C(n,l) subsets are listed; for even n at l = n/2 only the
// subsets containing party 0 (each bipartition once).
struct BipartitionLedger {
  struct Level {
    int size = 0;
    int exponent = 0;  // m_l, equal to subsets.size()
    std::vector<PartySet> subsets;
  };
  int n = 0;
  std::vector<Level> levels;
};

BipartitionLedger make_ledger(int n);

// All size-k subsets of {0..n-1} in lexicographic order.
std::vector<PartySet> subsets_of_size(int n, int k);

// Normalized linear entropy factor (d^l/(d^l-1)) (1 - p) with round-off
// handling: |1 - p| < 1e-12 counts as exactly 0, 1 - p < -1e-12 throws
// NumericError.
double linear_entropy_factor(double purity, int d, int l);

double gme_ame(const PureState& state);

// Four-party shortcut for operator states: the three pair marginals fix
// every purity in the ledger (singles by tracing the pairs).
double gme_ame(const PairMarginals& marginals, int d);

// Scott measure Sct_k. Throws InputError unless 1 <= k <= n/2.
double scott(const PureState& state, int k);

bool is_k_uniform(const PureState& state, int k, double tol = 1e-9);

struct MeasureFlags {
  bool biseparable = false;
  bool ame = false;
  std::set<int> k_uniform;
};

struct MeasureReport {
  int n = 0;
  int d = 0;
  double gme_ame = 0.0;
  std::map<int, double> scott;
  std::optional<double> polygon;
  std::optional<PolygonSolution> polygon_solution;
  std::map<PartySet, double> purities;
  MeasureFlags flags;
};

// Polygon only for four qubits; requesting it otherwise throws InputError.
MeasureReport measure_report(const PureState& state, bool want_polygon,
                             const SolverSettings& solver = {});

}  // namespace multient
