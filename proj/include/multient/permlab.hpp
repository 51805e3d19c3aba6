#pragma once

// Bipartite permutation operators P|ij> = |m_ij n_ij>, their four-party
// states |P> = (1/d) sum_ij |m_ij n_ij>|ij>, sign enphasing, exact-rational
// measure evaluation and exhaustive sweeps for d = 2, 3.

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "multient/polygon.hpp"
#include "multient/state.hpp"

namespace multient {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Reduced rational with positive denominator.
class ExactValue {
 public:
  ExactValue() = default;
  explicit ExactValue(BigRational v) : v_(std::move(v)) {}
  ExactValue(std::int64_t num, std::int64_t den);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }
  const BigRational& rational() const noexcept { return v_; }
  double to_double() const { return v_.convert_to<double>(); }
  std::string str() const;  // "num/den"

  friend bool operator==(const ExactValue& a, const ExactValue& b) { return a.v_ == b.v_; }
  friend bool operator<(const ExactValue& a, const ExactValue& b) { return a.v_ < b.v_; }

 private:
  BigRational v_{0};
};

struct PermutationSpec {
  int d = 2;
  std::vector<int> images;                   // P maps basis point t to images[t]
  std::optional<std::vector<double>> phases;  // theta_t, radians

  // Throws InputError for a non-bijective image array or wrong lengths.
  void validate() const;
};

// Builds images from a map (i, j) -> (m, n) on composite labels i*d + j.
PermutationSpec permutation_from_map(int d, const std::function<std::pair<int, int>(int, int)>& map);

PureState perm_state(const PermutationSpec& spec);

// Integer-amplitude four-party state (permutation or +/-1 enphased), stored
// sparsely. Every purity is a rational with denominator (sum a^2)^2.
struct IntegerState {
  int n = 4;
  int d = 2;
  std::vector<std::pair<std::uint32_t, std::int64_t>> nonzeros;  // (basis index, amplitude)
};

// `signs` bit t set flips the sign of the amplitude of source point t.
IntegerState integer_perm_state(const PermutationSpec& spec, std::uint32_t signs = 0);

// Purity numerator sum_ab G_ab^2 for G the Gram matrix of the reshaping
// (subset x rest); purity = numerator / (sum a^2)^2.
std::int64_t exact_purity_numerator(const IntegerState& s, const PartySet& subset);
ExactValue exact_purity(const IntegerState& s, const PartySet& subset);
ExactValue exact_gme_ame(const IntegerState& s);
ExactValue exact_scott(const IntegerState& s, int k);

// Lexicographic rank <-> permutation of {0..size-1}.
std::vector<int> unrank_permutation(std::uint64_t rank, int size);
std::uint64_t rank_permutation(const std::vector<int>& perm);
std::uint64_t factorial_u64(int k);

enum class Enphase { None, Binary };

struct SweepOptions {
  int d = 2;
  bool gme_ame = true;
  bool scott = false;    // k = 2
  bool polygon = false;  // d = 2 only, numeric
  Enphase enphase = Enphase::None;
  unsigned threads = 1;
  SolverSettings solver;  // solver.seed is the run seed; per-item seeds are derived
};

struct SweepRecord {
  std::uint64_t index = 0;    // rank * 2^(d^2) + pattern for binary enphasing, else rank
  std::uint64_t rank = 0;     // lexicographic permutation rank
  std::uint32_t pattern = 0;  // sign pattern bits
  std::optional<ExactValue> gme_ame;
  std::optional<ExactValue> scott;
  std::optional<double> polygon;
};

// Records ordered by index; identical for every thread count.
std::vector<SweepRecord> sweep(const SweepOptions& opts);

// All 2^(d^2) sign patterns of one permutation (d = 2 only).
std::vector<SweepRecord> enphase_sweep(const PermutationSpec& spec, bool gme_ame = true, bool scott = true,
                                       bool polygon = false, const SolverSettings& solver = {});

struct MeasuredValue {
  std::uint64_t index = 0;
  std::optional<ExactValue> exact;
  double value = 0.0;
};

struct ClassEntry {
  std::optional<ExactValue> exact;
  double value = 0.0;
  std::size_t count = 0;
  std::uint64_t representative = 0;  // smallest index in the class
};

struct ClassHistogram {
  std::vector<ClassEntry> entries;  // ascending by value, values distinct
  std::size_t total = 0;
};

struct ClassifyMode {
  bool exact = true;
  double eps = 1e-9;  // tolerance mode only
};

// Exact mode groups by rational equality (every record must carry one);
// tolerance mode walks the sorted values and opens a new class whenever a
// value is more than eps above the current class's first value.
ClassHistogram classify(const std::vector<MeasuredValue>& records, ClassifyMode mode = {});

enum class SweepMeasure { GmeAme, Scott, Polygon };
std::vector<MeasuredValue> extract(const std::vector<SweepRecord>& records, SweepMeasure which);

}  // namespace multient
