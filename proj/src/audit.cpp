#include "multient/audit.hpp"

#include <cmath>
#include <map>

#include "multient/measures.hpp"

namespace multient {

const std::vector<ReferenceRow>& reference_gme_qutrit() {
  static const std::vector<ReferenceRow> rows = {
      {1, 0.0000, 72},      {2, 0.4444, 1296},    {3, 0.5000, 864},     {4, 0.5093, 1296},
      {5, 0.6019, 1296},    {6, 0.6296, 5184},    {7, 0.6667, 13608},   {8, 0.6713, 10368},
      {9, 0.6821, 10368},   {10, 0.6914, 12960},  {11, 0.6944, 3456},   {12, 0.7160, 23328},
      {13, 0.7222, 2592},   {14, 0.7346, 5184},   {15, 0.7407, 10368},  {16, 0.7415, 25920},
      {17, 0.7500, 288},    {18, 0.7608, 36288},  {19, 0.6420, 5184},   {20, 0.7894, 10368},
      {21, 0.6667, 13608},  {22, 0.8133, 25920},  {23, 0.8889, 1296},   {24, 0.7176, 10368},
      {25, 0.8148, 15552},  {26, 0.7222, 2592},   {27, 0.8395, 20736},  {28, 0.8403, 1728},
      {29, 0.7654, 64800},  {30, 0.8056, 5184},   {31, 0.7901, 34344},  {32, 0.8920, 2592},
      {33, 1.0000, 72},
  };
  return rows;
}

const std::vector<ReferenceRow>& reference_scott_qutrit() {
  static const std::vector<ReferenceRow> rows = {
      {1, 0.6667, 72},      {2, 0.8148, 1170},    {3, 0.8333, 864},     {4, 0.8148, 1422},
      {5, 0.8796, 20736},   {6, 0.8704, 10368},   {7, 0.8889, 27432},   {8, 0.9630, 3888},
      {9, 0.8889, 27432},   {10, 0.8981, 36288},  {11, 0.9167, 101376}, {12, 0.9352, 46656},
      {13, 0.8519, 1296},   {14, 0.9074, 44064},  {15, 0.9259, 44712},  {16, 1.0000, 72},
  };
  return rows;
}

double round4(double v) { return std::round(v * 1e4) / 1e4; }

namespace {

bool same4(double a, double b) { return std::abs(a - b) < 5e-9; }

nlohmann::json row_json(const ReferenceRow& r) {
  return {{"no", r.no}, {"value", r.value}, {"count", r.count}};
}

nlohmann::json entry_json(const ClassEntry& e) {
  nlohmann::json j;
  if (e.exact) {
    j["value_num"] = e.exact->numerator().str();
    j["value_den"] = e.exact->denominator().str();
  }
  j["value_float"] = e.value;
  j["value_4dp"] = round4(e.value);
  j["count"] = e.count;
  j["representative"] = e.representative;
  return j;
}

}  // namespace

nlohmann::json histogram_json(const ClassHistogram& hist) {
  nlohmann::json j;
  j["total"] = hist.total;
  j["classes"] = hist.entries.size();
  j["entries"] = nlohmann::json::array();
  for (const auto& e : hist.entries) j["entries"].push_back(entry_json(e));
  return j;
}

nlohmann::json table_discrepancy(const ClassHistogram& computed, const std::vector<ReferenceRow>& reference,
                                 const std::string& measure) {
  nlohmann::json report;
  report["format"] = "multient v1";
  report["measure"] = measure;
  report["computed_total"] = computed.total;
  report["computed_classes"] = computed.entries.size();

  std::size_t reference_sum = 0;
  std::map<long, std::vector<const ReferenceRow*>> by_value;
  for (const auto& r : reference) {
    reference_sum += r.count;
    by_value[std::lround(r.value * 1e4)].push_back(&r);
  }
  report["reference_rows"] = reference.size();
  report["reference_count_sum"] = reference_sum;
  report["reference_distinct_values"] = by_value.size();

  nlohmann::json dups = nlohmann::json::array();
  for (const auto& [key, rows] : by_value) {
    if (rows.size() < 2) continue;
    nlohmann::json d;
    d["value"] = rows.front()->value;
    d["rows"] = nlohmann::json::array();
    std::size_t row_sum = 0;
    for (const auto* r : rows) {
      d["rows"].push_back(row_json(*r));
      row_sum += r->count;
    }
    d["row_count_sum"] = row_sum;
    d["computed_count"] = nullptr;
    for (const auto& e : computed.entries) {
      if (same4(round4(e.value), rows.front()->value)) d["computed_count"] = e.count;
    }
    dups.push_back(d);
  }
  report["reference_duplicate_values"] = dups;

  // Exact (value, count) matches first.
  std::vector<bool> used(reference.size(), false);
  std::vector<bool> matched(computed.entries.size(), false);
  nlohmann::json exact_matches = nlohmann::json::array();
  for (std::size_t c = 0; c < computed.entries.size(); ++c) {
    const auto& e = computed.entries[c];
    for (std::size_t p = 0; p < reference.size(); ++p) {
      if (used[p] || !same4(round4(e.value), reference[p].value) || reference[p].count != e.count) continue;
      used[p] = true;
      matched[c] = true;
      exact_matches.push_back({{"computed", entry_json(e)}, {"reference", row_json(reference[p])}});
      break;
    }
  }
  // Then value-only matches where the counts differ.
  nlohmann::json count_mismatch = nlohmann::json::array();
  for (std::size_t c = 0; c < computed.entries.size(); ++c) {
    if (matched[c]) continue;
    const auto& e = computed.entries[c];
    for (std::size_t p = 0; p < reference.size(); ++p) {
      if (used[p] || !same4(round4(e.value), reference[p].value)) continue;
      used[p] = true;
      matched[c] = true;
      count_mismatch.push_back({{"computed", entry_json(e)}, {"reference", row_json(reference[p])}});
      break;
    }
  }
  nlohmann::json computed_only = nlohmann::json::array();
  for (std::size_t c = 0; c < computed.entries.size(); ++c) {
    if (!matched[c]) computed_only.push_back(entry_json(computed.entries[c]));
  }
  nlohmann::json reference_only = nlohmann::json::array();
  for (std::size_t p = 0; p < reference.size(); ++p) {
    if (!used[p]) reference_only.push_back(row_json(reference[p]));
  }
  report["matched"] = exact_matches;
  report["value_match_count_differs"] = count_mismatch;
  report["computed_unmatched"] = computed_only;
  report["reference_unmatched"] = reference_only;
  report["summary"] = {
      {"matched", exact_matches.size()},
      {"value_match_count_differs", count_mismatch.size()},
      {"computed_unmatched", computed_only.size()},
      {"reference_unmatched", reference_only.size()},
      {"reference_duplicate_values", dups.size()},
  };
  report["computed_histogram"] = histogram_json(computed);
  return report;
}

nlohmann::json qubit_permutation_audit() {
  SweepOptions opts;
  opts.d = 2;
  opts.gme_ame = true;
  opts.scott = true;
  const auto records = sweep(opts);

  std::vector<MeasuredValue> stripped_gme;
  std::vector<MeasuredValue> stripped_scott;
  const auto pair_subsets = make_ledger(4).levels.back().subsets;
  const auto all_pairs = subsets_of_size(4, 2);
  for (const auto& r : records) {
    PermutationSpec spec{2, unrank_permutation(r.rank, 4), std::nullopt};
    const IntegerState s = integer_perm_state(spec);
    BigRational prod = 1;
    for (const auto& pair : pair_subsets) prod *= BigRational(1) - exact_purity(s, pair).rational();
    BigRational sum = 0;
    for (const auto& pair : all_pairs) sum += exact_purity(s, pair).rational();
    const BigRational raw_scott = BigRational(1) - sum / BigRational(static_cast<long>(all_pairs.size()));
    stripped_gme.push_back({r.index, ExactValue(prod), prod.convert_to<double>()});
    stripped_scott.push_back({r.index, ExactValue(raw_scott), raw_scott.convert_to<double>()});
  }

  nlohmann::json j;
  j["format"] = "multient v1";
  j["states"] = records.size();
  j["gme_ame"] = histogram_json(classify(extract(records, SweepMeasure::GmeAme)));
  j["scott2"] = histogram_json(classify(extract(records, SweepMeasure::Scott)));
  j["gme_ame_pair_product_unnormalized"] = histogram_json(classify(stripped_gme));
  j["scott2_without_prefactor"] = histogram_json(classify(stripped_scott));
  j["reference_values"] = {{"gme_ame_max", 0.3}, {"scott_max", 0.7}, {"polygon_max", 0.96}};
  j["note"] =
      "normalized maxima are 2/3 (GME-AME) and 8/9 (Sct_2); the reference 0.3 and 0.7 match the "
      "unnormalized pair product 9/32 and the Scott value without its d^k/(d^k-1) prefactor, 2/3";
  return j;
}

}  // namespace multient
