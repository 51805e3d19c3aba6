#pragma once

// Named reference states: GHZ, W, operator states of I/SWAP/CNOT/DCNOT, an
// AME(4,3) permutation state and the nine four-qubit LOCC families.
// Superpositions are written unnormalized and normalized on construction,
// so for parametrized families the norm depends on the parameters.

#include <map>
#include <string>
#include <vector>

#include "multient/measures.hpp"
#include "multient/state.hpp"

namespace multient {

using ParamMap = std::map<std::string, cplx>;

struct CatalogEntry {
  std::string name;
  std::vector<std::string> params;  // required complex parameters
  bool takes_n = false;             // party count adjustable (--n)
  bool takes_d = false;             // local dimension adjustable (--d)
  std::string description;
};

const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry& catalog_entry(const std::string& name);  // InputError if unknown

struct NamedStateSpec {
  std::string name;
  ParamMap params;
  int n = 0;  // 0 selects the entry's default
  int d = 0;
};

// Throws InputError for unknown names, missing or unexpected parameters,
// or parameters giving the zero vector.
PureState named_state(const NamedStateSpec& spec);

using ParamGrid = std::vector<ParamMap>;

// Unit-modulus grid: parameter k takes exp(i 2 pi m / counts[k]),
// m = 0..counts[k]-1; the last parameter varies fastest.
ParamGrid phase_grid(const std::vector<std::string>& names, const std::vector<int>& counts);

// About 1000 unit-modulus points for a parametrized family.
ParamGrid default_class_grid(const std::string& name);

struct ClassSweepRecord {
  ParamMap params;
  MeasureReport report;
};

// Families: g_abcd, l_abc2, l_a2b2, l_ab3, l_a4, l_a2_0. Throws InputError
// on an empty grid or a non-parametrized name.
std::vector<ClassSweepRecord> class_sweep(const std::string& name, const ParamGrid& grid);

}  // namespace multient
