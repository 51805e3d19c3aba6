#include "multient/measures.hpp"

#include <cmath>
#include <numeric>

#include "multient/errors.hpp"

namespace multient {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kFlagTol = 1e-9;
constexpr double kBiseparableTol = 1e-10;

void collect_subsets(int n, int k, int start, PartySet& cur, std::vector<PartySet>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int p = start; p < n; ++p) {
    cur.push_back(p);
    collect_subsets(n, k, p + 1, cur, out);
    cur.pop_back();
  }
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// One-party marginal of a two-party matrix on (a, b): keep a when
// `keep_first`, else keep b.
CMatrix trace_one_of_two(const CMatrix& rho, int d, bool keep_first) {
  CMatrix out = CMatrix::Zero(d, d);
  for (int a = 0; a < d; ++a) {
    for (int a2 = 0; a2 < d; ++a2) {
      for (int b = 0; b < d; ++b) {
        if (keep_first) {
          out(a, a2) += rho(a * d + b, a2 * d + b);
        } else {
          out(a, a2) += rho(b * d + a, b * d + a2);
        }
      }
    }
  }
  return out;
}

void check_k(int n, int k, const char* who) {
  if (k < 1 || k > n / 2) {
    throw InputError(std::string(who) + ": k must satisfy 1 <= k <= floor(n/2)");
  }
}

}  // namespace

std::vector<PartySet> subsets_of_size(int n, int k) {
  std::vector<PartySet> out;
  PartySet cur;
  collect_subsets(n, k, 0, cur, out);
  return out;
}

BipartitionLedger make_ledger(int n) {
  BipartitionLedger ledger;
  ledger.n = n;
  for (int l = 1; l <= n / 2; ++l) {
    BipartitionLedger::Level level;
    level.size = l;
    for (auto& s : subsets_of_size(n, l)) {
      if (2 * l == n && s.front() != 0) continue;
      level.subsets.push_back(std::move(s));
    }
    level.exponent = static_cast<int>(level.subsets.size());
    ledger.levels.push_back(std::move(level));
  }
  return ledger;
}

double linear_entropy_factor(double purity, int d, int l) {
  double lin = 1.0 - purity;
  if (std::abs(lin) < kSnap) {
    lin = 0.0;
  } else if (lin < 0.0) {
    throw NumericError("purity exceeds 1 beyond round-off");
  }
  const double dl = std::pow(static_cast<double>(d), l);
  return dl / (dl - 1.0) * lin;
}

double gme_ame(const PureState& state) {
  const auto ledger = make_ledger(state.parties());
  double value = 1.0;
  for (const auto& level : ledger.levels) {
    for (const auto& s : level.subsets) {
      value *= linear_entropy_factor(purity(partial_trace(state, s)), state.local_dim(), level.size);
      if (value == 0.0) return 0.0;
    }
  }
  return value;
}

double gme_ame(const PairMarginals& m, int d) {
  const double singles[] = {
      purity(trace_one_of_two(m.rho12, d, true)),
      purity(trace_one_of_two(m.rho12, d, false)),
      purity(trace_one_of_two(m.rho13, d, false)),
      purity(trace_one_of_two(m.rho14, d, false)),
  };
  double value = 1.0;
  for (double p : singles) value *= linear_entropy_factor(p, d, 1);
  for (const CMatrix* r : {&m.rho12, &m.rho13, &m.rho14}) value *= linear_entropy_factor(purity(*r), d, 2);
  return value;
}

double scott(const PureState& state, int k) {
  const int n = state.parties();
  check_k(n, k, "scott");
  double sum = 0.0;
  for (const auto& s : subsets_of_size(n, k)) sum += purity(partial_trace(state, s));
  const double weight = factorial(k) * factorial(n - k) / factorial(n);
  const double dk = std::pow(static_cast<double>(state.local_dim()), k);
  double lin = 1.0 - weight * sum;
  if (std::abs(lin) < kSnap) lin = 0.0;
  return dk / (dk - 1.0) * lin;
}

bool is_k_uniform(const PureState& state, int k, double tol) {
  const int n = state.parties();
  check_k(n, k, "is_k_uniform");
  for (const auto& s : subsets_of_size(n, k)) {
    const auto rho = partial_trace(state, s);
    const auto dim = rho.dim();
    const CMatrix target = CMatrix::Identity(dim, dim) / static_cast<double>(dim);
    if ((rho.matrix() - target).cwiseAbs().maxCoeff() >= tol) return false;
  }
  return true;
}

MeasureReport measure_report(const PureState& state, bool want_polygon, const SolverSettings& solver) {
  const int n = state.parties();
  const int d = state.local_dim();
  if (want_polygon && (n != 4 || d != 2)) {
    throw InputError("measure_report: the polygon measure is defined for four qubits only");
  }
  MeasureReport report;
  report.n = n;
  report.d = d;
  report.gme_ame = gme_ame(state);
  for (int k = 1; k <= n / 2; ++k) {
    report.scott[k] = scott(state, k);
    for (const auto& s : subsets_of_size(n, k)) report.purities[s] = purity(partial_trace(state, s));
    if (is_k_uniform(state, k, kFlagTol)) report.flags.k_uniform.insert(k);
  }
  report.flags.biseparable = report.gme_ame <= kBiseparableTol;
  report.flags.ame = report.gme_ame >= 1.0 - kFlagTol;
  if (want_polygon) {
    auto result = polygon_measure_detailed(state, solver);
    report.polygon = result.value;
    report.polygon_solution = std::move(result.solution);
  }
  return report;
}

}  // namespace multient
