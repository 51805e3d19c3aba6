#include "multient/catalog.hpp"

#include <algorithm>
#include <numbers>
#include <utility>

#include "multient/choi.hpp"
#include "multient/errors.hpp"
#include "multient/permlab.hpp"

namespace multient {

namespace {

using Terms = std::vector<std::pair<cplx, const char*>>;

// Four-qubit superposition from bitstring terms.
PureState qubit_terms(const Terms& terms) {
  CVector v = CVector::Zero(16);
  for (const auto& [coef, bits] : terms) v(std::stoi(bits, nullptr, 2)) += coef;
  if (v.squaredNorm() == 0.0) throw InputError("named_state: parameters give the zero vector");
  return make_state(4, 2, std::move(v));
}

cplx param(const ParamMap& p, const std::string& key) { return p.at(key); }

const std::vector<std::string> kFamilies = {"g_abcd", "l_abc2", "l_a2b2", "l_ab3", "l_a4", "l_a2_0"};

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = {
      {"ghz", {}, true, true, "(|0..0> + |1..1> + ... + |d-1..d-1>)/sqrt(d); n default 3, d default 2"},
      {"w", {}, true, false, "qubit W state, one excitation over n parties; n default 3"},
      {"identity", {}, false, true, "operator state of the identity on d x d; d default 2"},
      {"swap", {}, false, true, "operator state of SWAP on d x d; d default 2"},
      {"cnot", {}, false, false, "operator state of CNOT"},
      {"dcnot", {}, false, false, "operator state of the double CNOT |ab> -> |a+b, a>"},
      {"ame43", {}, false, false, "qutrit permutation state (i,j) -> (i+j, i+2j) mod 3, an AME(4,3)"},
      {"g_abcd", {"a", "b", "c", "d"}, false, false, "generic four-qubit family G_abcd"},
      {"l_abc2", {"a", "b", "c"}, false, false, "four-qubit family L_abc2"},
      {"l_a2b2", {"a", "b"}, false, false, "four-qubit family L_a2b2"},
      {"l_ab3", {"a", "b"}, false, false, "four-qubit family L_ab3"},
      {"l_a4", {"a"}, false, false, "four-qubit family L_a4"},
      {"l_a2_0", {"a"}, false, false, "four-qubit family L_a2 (+) 0_{3(+)1}"},
      {"l_05_3", {}, false, false, "four-qubit class L_{0_{5(+)3}}"},
      {"l_07_1", {}, false, false, "four-qubit class L_{0_{7(+)1}}"},
      {"l_03_03", {}, false, false, "four-qubit class L_{0_{3(+)1} 0_{3(+)1}} (biseparable)"},
  };
  return entries;
}

const CatalogEntry& catalog_entry(const std::string& name) {
  const auto& entries = catalog_entries();
  const auto it = std::find_if(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; });
  if (it == entries.end()) throw InputError("unknown catalog state '" + name + "'");
  return *it;
}

PureState named_state(const NamedStateSpec& spec) {
  const CatalogEntry& entry = catalog_entry(spec.name);
  for (const auto& key : entry.params) {
    if (!spec.params.count(key)) throw InputError("named_state: '" + spec.name + "' needs parameter '" + key + "'");
  }
  for (const auto& [key, value] : spec.params) {
    if (std::find(entry.params.begin(), entry.params.end(), key) == entry.params.end()) {
      throw InputError("named_state: '" + spec.name + "' takes no parameter '" + key + "'");
    }
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
      throw InputError("named_state: non-finite parameter '" + key + "'");
    }
  }
  if (spec.n != 0 && !entry.takes_n) throw InputError("named_state: '" + spec.name + "' has a fixed party count");
  if (spec.d != 0 && !entry.takes_d) throw InputError("named_state: '" + spec.name + "' has a fixed local dimension");

  const int n = spec.n != 0 ? spec.n : 3;
  const int d = spec.d != 0 ? spec.d : 2;
  const auto& p = spec.params;
  const cplx i(0.0, 1.0);
  const std::string& name = spec.name;

  if (name == "ghz") {
    if (n < 2 || d < 2) throw InputError("named_state: ghz needs n >= 2 and d >= 2");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(ipow(d, n)));
    const auto step = static_cast<Eigen::Index>((ipow(d, n) - 1) / static_cast<std::size_t>(d - 1));
    for (int k = 0; k < d; ++k) v(k * step) = 1.0;
    return make_state(n, d, std::move(v));
  }
  if (name == "w") {
    if (n < 2) throw InputError("named_state: w needs n >= 2");
    CVector v = CVector::Zero(static_cast<Eigen::Index>(ipow(2, n)));
    for (int k = 0; k < n; ++k) v(static_cast<Eigen::Index>(ipow(2, k))) = 1.0;
    return make_state(n, 2, std::move(v));
  }
  if (name == "identity") return op_to_state(BipartiteOperator::identity(d));
  if (name == "swap") return op_to_state(BipartiteOperator::swap(d));
  if (name == "cnot") {
    return perm_state(permutation_from_map(2, [](int a, int b) { return std::pair{a, a ^ b}; }));
  }
  if (name == "dcnot") {
    return perm_state(permutation_from_map(2, [](int a, int b) { return std::pair{a ^ b, a}; }));
  }
  if (name == "ame43") {
    return perm_state(permutation_from_map(3, [](int a, int b) { return std::pair{(a + b) % 3, (a + 2 * b) % 3}; }));
  }
  if (name == "g_abcd") {
    const cplx a = param(p, "a"), b = param(p, "b"), c = param(p, "c"), dd = param(p, "d");
    return qubit_terms({{(a + dd) / 2.0, "0000"}, {(a + dd) / 2.0, "1111"},
                        {(a - dd) / 2.0, "0011"}, {(a - dd) / 2.0, "1100"},
                        {(b + c) / 2.0, "0101"},  {(b + c) / 2.0, "1010"},
                        {(b - c) / 2.0, "0110"},  {(b - c) / 2.0, "1001"}});
  }
  if (name == "l_abc2") {
    const cplx a = param(p, "a"), b = param(p, "b"), c = param(p, "c");
    return qubit_terms({{(a + b) / 2.0, "0000"}, {(a + b) / 2.0, "1111"},
                        {(a - b) / 2.0, "0011"}, {(a - b) / 2.0, "1100"},
                        {c, "0101"},             {c, "1010"},
                        {1.0, "0110"}});
  }
  if (name == "l_a2b2") {
    const cplx a = param(p, "a"), b = param(p, "b");
    return qubit_terms({{a, "0000"}, {a, "1111"}, {b, "0101"}, {b, "1010"}, {1.0, "0110"}, {1.0, "0011"}});
  }
  if (name == "l_ab3") {
    const cplx a = param(p, "a"), b = param(p, "b");
    const cplx h = i / std::sqrt(2.0);
    return qubit_terms({{a, "0000"},             {a, "1111"},
                        {(a + b) / 2.0, "0101"}, {(a + b) / 2.0, "1010"},
                        {(a - b) / 2.0, "0110"}, {(a - b) / 2.0, "1001"},
                        {h, "0001"},             {h, "0010"},
                        {1.0, "0111"},           {1.0, "1011"}});
  }
  if (name == "l_a4") {
    const cplx a = param(p, "a");
    return qubit_terms({{a, "0000"}, {a, "0101"}, {a, "1010"}, {a, "1111"}, {i, "0001"}, {1.0, "0110"}, {-i, "1011"}});
  }
  if (name == "l_a2_0") {
    const cplx a = param(p, "a");
    return qubit_terms({{a, "0000"}, {a, "1111"}, {1.0, "0011"}, {1.0, "0101"}, {1.0, "0110"}});
  }
  if (name == "l_05_3") return qubit_terms({{1.0, "0000"}, {1.0, "0101"}, {1.0, "1000"}, {1.0, "1110"}});
  if (name == "l_07_1") return qubit_terms({{1.0, "0000"}, {1.0, "1011"}, {1.0, "1101"}, {1.0, "1110"}});
  if (name == "l_03_03") return qubit_terms({{1.0, "0000"}, {1.0, "0111"}});
  throw InputError("unknown catalog state '" + name + "'");
}

ParamGrid phase_grid(const std::vector<std::string>& names, const std::vector<int>& counts) {
  if (names.size() != counts.size()) throw InputError("phase_grid: one count per parameter");
  ParamGrid grid;
  if (names.empty()) return grid;
  std::size_t total = 1;
  for (int c : counts) {
    if (c < 1) throw InputError("phase_grid: counts must be positive");
    total *= static_cast<std::size_t>(c);
  }
  grid.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    ParamMap point;
    std::size_t rem = flat;
    for (std::size_t k = names.size(); k-- > 0;) {
      const auto c = static_cast<std::size_t>(counts[k]);
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(rem % c) / static_cast<double>(c);
      point[names[k]] = std::polar(1.0, theta);
      rem /= c;
    }
    grid.push_back(std::move(point));
  }
  return grid;
}

ParamGrid default_class_grid(const std::string& name) {
  const auto& entry = catalog_entry(name);
  switch (entry.params.size()) {
    case 1: return phase_grid(entry.params, {1000});
    case 2: return phase_grid(entry.params, {40, 25});
    case 3: return phase_grid(entry.params, {10, 10, 10});
    case 4: return phase_grid(entry.params, {8, 5, 5, 5});
    default: throw InputError("default_class_grid: '" + name + "' is not a parametrized family");
  }
}

std::vector<ClassSweepRecord> class_sweep(const std::string& name, const ParamGrid& grid) {
  if (std::find(kFamilies.begin(), kFamilies.end(), name) == kFamilies.end()) {
    throw InputError("class_sweep: '" + name + "' is not a parametrized family");
  }
  if (grid.empty()) throw InputError("class_sweep: empty parameter grid");
  std::vector<ClassSweepRecord> out;
  out.reserve(grid.size());
  for (const auto& point : grid) {
    const PureState s = named_state({name, point, 0, 0});
    out.push_back({point, measure_report(s, false)});
  }
  return out;
}

}  // namespace multient
