#pragma once

// Comparison of exact sweep histograms against reference class tables
// (values printed to four decimals) and the qubit-permutation audit.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "multient/permlab.hpp"

namespace multient {

struct ReferenceRow {
  int no = 0;
  double value = 0.0;  // four decimals
  std::size_t count = 0;
};

// Reference GME-AME classes of the 9! qutrit permutation states (33 rows).
const std::vector<ReferenceRow>& reference_gme_qutrit();
// Reference Sct_2 classes of the same states (16 rows).
const std::vector<ReferenceRow>& reference_scott_qutrit();

double round4(double v);

// Machine-readable diff: computed classes rounded to four decimals are
// matched to reference rows by (value, count) as multisets; leftovers,
// value-only matches with differing counts and duplicated reference rows
// are listed separately.
nlohmann::json table_discrepancy(const ClassHistogram& computed, const std::vector<ReferenceRow>& reference,
                                 const std::string& measure);

// Qubit permutation audit: normalized GME-AME / Sct_2 classes plus the
// prefactor-stripped quantities (product of pair-level linear entropies;
// Scott without d^k/(d^k-1)).
nlohmann::json qubit_permutation_audit();

nlohmann::json histogram_json(const ClassHistogram& hist);

}  // namespace multient
