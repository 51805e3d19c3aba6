#include "multient/permlab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "multient/choi.hpp"
#include "multient/errors.hpp"
#include "multient/measures.hpp"
#include "multient/rng.hpp"

namespace multient {

ExactValue::ExactValue(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InputError("ExactValue: zero denominator");
  v_ = BigRational(BigInt(num), BigInt(den));
}

std::string ExactValue::str() const { return numerator().str() + "/" + denominator().str(); }

void PermutationSpec::validate() const {
  const auto size = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
  if (d < 2) throw InputError("PermutationSpec: local dimension must be >= 2");
  if (images.size() != size) throw InputError("PermutationSpec: images must have d^2 entries");
  std::vector<bool> seen(size, false);
  for (int m : images) {
    if (m < 0 || static_cast<std::size_t>(m) >= size || seen[static_cast<std::size_t>(m)]) {
      throw InputError("PermutationSpec: images is not a bijection");
    }
    seen[static_cast<std::size_t>(m)] = true;
  }
  if (phases && phases->size() != size) throw InputError("PermutationSpec: phases must have d^2 entries");
}

PermutationSpec permutation_from_map(int d, const std::function<std::pair<int, int>(int, int)>& map) {
  PermutationSpec spec;
  spec.d = d;
  spec.images.resize(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto [m, n] = map(i, j);
      spec.images[static_cast<std::size_t>(i * d + j)] = m * d + n;
    }
  }
  spec.validate();
  return spec;
}

PureState perm_state(const PermutationSpec& spec) {
  spec.validate();
  const int dd = spec.d * spec.d;
  CMatrix p = CMatrix::Zero(dd, dd);
  for (int t = 0; t < dd; ++t) {
    const double theta = spec.phases ? (*spec.phases)[static_cast<std::size_t>(t)] : 0.0;
    p(spec.images[static_cast<std::size_t>(t)], t) = std::polar(1.0, theta);
  }
  return op_to_state(BipartiteOperator(spec.d, std::move(p)));
}

IntegerState integer_perm_state(const PermutationSpec& spec, std::uint32_t signs) {
  spec.validate();
  const auto dd = static_cast<std::uint32_t>(spec.d * spec.d);
  IntegerState s;
  s.n = 4;
  s.d = spec.d;
  s.nonzeros.reserve(dd);
  for (std::uint32_t t = 0; t < dd; ++t) {
    const auto row = static_cast<std::uint32_t>(spec.images[t]);
    const std::int64_t amp = ((signs >> t) & 1U) ? -1 : 1;
    s.nonzeros.emplace_back(row * dd + t, amp);
  }
  std::sort(s.nonzeros.begin(), s.nonzeros.end());
  return s;
}

std::int64_t exact_purity_numerator(const IntegerState& s, const PartySet& subset) {
  const int n = s.n;
  const auto d = static_cast<std::uint32_t>(s.d);
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int p : subset) kept[static_cast<std::size_t>(p)] = true;
  const auto keep_dim = static_cast<std::size_t>(ipow(d, static_cast<int>(subset.size())));

  struct Split {
    std::uint32_t keep;
    std::uint32_t rest;
    std::int64_t amp;
  };
  std::vector<Split> split;
  split.reserve(s.nonzeros.size());
  std::vector<std::uint32_t> digits(static_cast<std::size_t>(n));
  for (const auto& [idx, amp] : s.nonzeros) {
    std::uint32_t rem = idx;
    for (int p = n - 1; p >= 0; --p) {
      digits[static_cast<std::size_t>(p)] = rem % d;
      rem /= d;
    }
    std::uint32_t a = 0;
    std::uint32_t r = 0;
    for (int p = 0; p < n; ++p) {
      if (kept[static_cast<std::size_t>(p)]) {
        a = a * d + digits[static_cast<std::size_t>(p)];
      } else {
        r = r * d + digits[static_cast<std::size_t>(p)];
      }
    }
    split.push_back({a, r, amp});
  }

  std::vector<std::int64_t> gram(keep_dim * keep_dim, 0);
  for (const auto& u : split) {
    for (const auto& v : split) {
      if (u.rest == v.rest) gram[u.keep * keep_dim + v.keep] += u.amp * v.amp;
    }
  }
  std::int64_t num = 0;
  for (auto g : gram) num += g * g;
  return num;
}

namespace {

std::int64_t squared_norm(const IntegerState& s) {
  std::int64_t n = 0;
  for (const auto& nz : s.nonzeros) n += nz.second * nz.second;
  return n;
}

BigInt big_pow(std::int64_t base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

ExactValue exact_purity(const IntegerState& s, const PartySet& subset) {
  const std::int64_t norm2 = squared_norm(s);
  if (norm2 == 0) throw InputError("exact_purity: zero state");
  return ExactValue(BigRational(BigInt(exact_purity_numerator(s, subset)), BigInt(norm2) * norm2));
}

ExactValue exact_gme_ame(const IntegerState& s) {
  const std::int64_t norm2 = squared_norm(s);
  if (norm2 == 0) throw InputError("exact_gme_ame: zero state");
  const BigInt denom2 = BigInt(norm2) * norm2;
  BigInt num = 1;
  BigInt den = 1;
  for (const auto& level : make_ledger(s.n).levels) {
    const BigInt dl = big_pow(s.d, level.size);
    for (const auto& subset : level.subsets) {
      const BigInt lin = denom2 - exact_purity_numerator(s, subset);
      if (lin == 0) return ExactValue(0, 1);
      num *= dl * lin;
      den *= (dl - 1) * denom2;
    }
  }
  return ExactValue(BigRational(num, den));
}

ExactValue exact_scott(const IntegerState& s, int k) {
  if (k < 1 || k > s.n / 2) throw InputError("exact_scott: k must satisfy 1 <= k <= floor(n/2)");
  const std::int64_t norm2 = squared_norm(s);
  if (norm2 == 0) throw InputError("exact_scott: zero state");
  BigInt sum = 0;
  for (const auto& subset : subsets_of_size(s.n, k)) sum += exact_purity_numerator(s, subset);
  // k!(n-k)!/n! = 1 / C(n,k)
  const BigInt choose = BigInt(factorial_u64(s.n)) / (BigInt(factorial_u64(k)) * factorial_u64(s.n - k));
  const BigInt denom2 = BigInt(norm2) * norm2;
  const BigInt dk = big_pow(s.d, k);
  const BigRational lin = BigRational(1) - BigRational(sum, choose * denom2);
  return ExactValue(BigRational(dk, dk - 1) * lin);
}

std::uint64_t factorial_u64(int k) {
  std::uint64_t f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

std::vector<int> unrank_permutation(std::uint64_t rank, int size) {
  if (rank >= factorial_u64(size)) throw InputError("unrank_permutation: rank out of range");
  std::vector<int> pool(static_cast<std::size_t>(size));
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<int> out;
  out.reserve(pool.size());
  for (int pos = size - 1; pos >= 0; --pos) {
    const std::uint64_t f = factorial_u64(pos);
    const auto pick = static_cast<std::size_t>(rank / f);
    rank %= f;
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
  }
  return out;
}

std::uint64_t rank_permutation(const std::vector<int>& perm) {
  std::uint64_t rank = 0;
  const auto size = perm.size();
  for (std::size_t i = 0; i < size; ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < size; ++j) smaller += perm[j] < perm[i] ? 1 : 0;
    rank += smaller * factorial_u64(static_cast<int>(size - 1 - i));
  }
  return rank;
}

namespace {

SweepRecord evaluate(const PermutationSpec& spec, std::uint64_t rank, std::uint32_t pattern,
                     std::uint64_t index, bool want_gme, bool want_scott, bool want_polygon,
                     const SolverSettings& solver) {
  SweepRecord rec;
  rec.index = index;
  rec.rank = rank;
  rec.pattern = pattern;
  const IntegerState s = integer_perm_state(spec, pattern);
  if (want_gme) rec.gme_ame = exact_gme_ame(s);
  if (want_scott) rec.scott = exact_scott(s, 2);
  if (want_polygon) {
    PermutationSpec phased = spec;
    std::vector<double> phases(spec.images.size(), 0.0);
    for (std::size_t t = 0; t < phases.size(); ++t) {
      if ((pattern >> t) & 1U) phases[t] = std::numbers::pi;
    }
    phased.phases = std::move(phases);
    SolverSettings cfg = solver;
    cfg.seed = mix_seed(solver.seed, index);
    rec.polygon = polygon_measure(perm_state(phased), cfg);
  }
  return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepOptions& opts) {
  if (opts.d != 2 && opts.d != 3) throw InputError("sweep: local dimension must be 2 or 3");
  if (opts.enphase == Enphase::Binary && opts.d != 2) {
    throw InputError("sweep: binary enphasing is supported for d = 2 only");
  }
  if (opts.polygon && opts.d != 2) throw InputError("sweep: the polygon measure needs d = 2");

  const int size = opts.d * opts.d;
  const std::uint64_t perms = factorial_u64(size);
  const std::uint64_t patterns = opts.enphase == Enphase::Binary ? (1ULL << size) : 1ULL;
  std::vector<SweepRecord> out(static_cast<std::size_t>(perms * patterns));

  const unsigned workers = std::max(1U, std::min<unsigned>(opts.threads, static_cast<unsigned>(perms)));
  auto run_shard = [&](std::uint64_t lo, std::uint64_t hi) {
    if (lo >= hi) return;
    std::vector<int> images = unrank_permutation(lo, size);
    for (std::uint64_t rank = lo; rank < hi; ++rank) {
      PermutationSpec spec{opts.d, images, std::nullopt};
      for (std::uint64_t pat = 0; pat < patterns; ++pat) {
        const std::uint64_t index = rank * patterns + pat;
        out[static_cast<std::size_t>(index)] =
            evaluate(spec, rank, static_cast<std::uint32_t>(pat), index, opts.gme_ame, opts.scott,
                     opts.polygon, opts.solver);
      }
      std::next_permutation(images.begin(), images.end());
    }
  };

  if (workers == 1) {
    run_shard(0, perms);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = perms * w / workers;
      const std::uint64_t hi = perms * (w + 1) / workers;
      pool.emplace_back(run_shard, lo, hi);
    }
  }
  return out;
}

std::vector<SweepRecord> enphase_sweep(const PermutationSpec& spec, bool gme_ame, bool scott, bool polygon,
                                       const SolverSettings& solver) {
  spec.validate();
  if (spec.d != 2) throw InputError("enphase_sweep: sign patterns are swept for d = 2 only");
  const int size = spec.d * spec.d;
  const std::uint64_t rank = rank_permutation(spec.images);
  std::vector<SweepRecord> out;
  for (std::uint32_t pat = 0; pat < (1U << size); ++pat) {
    out.push_back(evaluate(spec, rank, pat, pat, gme_ame, scott, polygon, solver));
  }
  return out;
}

ClassHistogram classify(const std::vector<MeasuredValue>& records, ClassifyMode mode) {
  ClassHistogram hist;
  hist.total = records.size();
  if (records.empty()) return hist;

  // Sort key: the float value, then (for exact mode) the reduced fraction held in
  // 64-bit integers when it fits; cpp_rational comparison is the slow fallback.
  struct Key {
    double value;
    bool small;
    std::int64_t num;
    std::int64_t den;
    const MeasuredValue* rec;
  };
  std::vector<Key> keys;
  keys.reserve(records.size());
  const BigInt limit = BigInt(std::numeric_limits<std::int64_t>::max());
  for (const auto& r : records) {
    Key k{r.value, false, 0, 1, &r};
    if (mode.exact) {
      if (!r.exact) throw InputError("classify: exact mode needs rational values");
      const BigInt num = r.exact->numerator();
      const BigInt den = r.exact->denominator();
      if (abs(num) <= limit && den <= limit) {
        k.small = true;
        k.num = num.convert_to<std::int64_t>();
        k.den = den.convert_to<std::int64_t>();
      }
    }
    keys.push_back(k);
  }
  auto same_exact = [](const Key& a, const Key& b) {
    if (a.small && b.small) return a.num == b.num && a.den == b.den;
    return *a.rec->exact == *b.rec->exact;
  };
  auto exact_less = [](const Key& a, const Key& b) {
    if (a.small && b.small) {
      return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    return *a.rec->exact < *b.rec->exact;
  };
  std::sort(keys.begin(), keys.end(), [&](const Key& a, const Key& b) {
    if (a.value != b.value) return a.value < b.value;
    if (mode.exact && !same_exact(a, b)) return exact_less(a, b);
    return a.rec->index < b.rec->index;
  });

  const Key* head = nullptr;
  for (const Key& k : keys) {
    const MeasuredValue* r = k.rec;
    bool same = false;
    if (head) same = mode.exact ? same_exact(*head, k) : (r->value - hist.entries.back().value <= mode.eps);
    if (same) {
      auto& cur = hist.entries.back();
      ++cur.count;
      cur.representative = std::min(cur.representative, r->index);
    } else {
      hist.entries.push_back(ClassEntry{r->exact, r->exact ? r->exact->to_double() : r->value, 1, r->index});
      head = &k;
    }
  }
  return hist;
}

std::vector<MeasuredValue> extract(const std::vector<SweepRecord>& records, SweepMeasure which) {
  std::vector<MeasuredValue> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    MeasuredValue v;
    v.index = r.index;
    switch (which) {
      case SweepMeasure::GmeAme:
        if (!r.gme_ame) throw InputError("extract: records carry no gme_ame values");
        v.exact = r.gme_ame;
        v.value = r.gme_ame->to_double();
        break;
      case SweepMeasure::Scott:
        if (!r.scott) throw InputError("extract: records carry no scott values");
        v.exact = r.scott;
        v.value = r.scott->to_double();
        break;
      case SweepMeasure::Polygon:
        if (!r.polygon) throw InputError("extract: records carry no polygon values");
        v.value = *r.polygon;
        break;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace multient
