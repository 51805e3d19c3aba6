#include "multient/state.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "multient/errors.hpp"
#include "multient/rng.hpp"

namespace multient {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;
constexpr double kUnitaryTol = 1e-10;
constexpr double kEntropyCutoff = 1e-12;

PartySet checked_sorted(PartySet keep, int n) {
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || static_cast<int>(keep.size()) >= n) {
    throw InputError("partial_trace: kept parties must be a nonempty proper subset");
  }
  if (std::adjacent_find(keep.begin(), keep.end()) != keep.end()) {
    throw InputError("partial_trace: duplicate party label");
  }
  if (keep.front() < 0 || keep.back() >= n) {
    throw InputError("partial_trace: party label out of range");
  }
  return keep;
}

}  // namespace

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

PureState make_state(int n, int d, CVector amps) {
  if (n < 2 || d < 2) {
    throw InputError("make_state: need n >= 2 parties and local dimension d >= 2");
  }
  const auto expected = ipow(static_cast<std::size_t>(d), n);
  if (static_cast<std::size_t>(amps.size()) != expected) {
    std::ostringstream msg;
    msg << "make_state: expected " << expected << " amplitudes for n=" << n << ", d=" << d
        << ", got " << amps.size();
    throw InputError(msg.str());
  }
  if (!amps.allFinite()) throw InputError("make_state: non-finite amplitude");
  const double norm = amps.norm();
  if (!(norm > 0.0)) throw InputError("make_state: zero vector cannot be normalized");
  amps /= norm;
  return PureState(n, d, std::move(amps));
}

PureState make_state(int n, int d, const std::vector<cplx>& amps) {
  CVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return make_state(n, d, std::move(v));
}

DensityMatrix DensityMatrix::from_matrix(PartySet parties, int d, CMatrix mat) {
  const auto dim = ipow(static_cast<std::size_t>(d), static_cast<int>(parties.size()));
  if (mat.rows() != mat.cols() || static_cast<std::size_t>(mat.rows()) != dim) {
    throw InputError("DensityMatrix: matrix must be d^|parties| square");
  }
  if ((mat - mat.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw InputError("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(mat.trace() - cplx(1.0)) > kTraceTol) {
    throw InputError("DensityMatrix: trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es(mat, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw InputError("DensityMatrix: matrix is not positive semidefinite");
  }
  return DensityMatrix(std::move(parties), d, std::move(mat));
}

LocalUnitarySet::LocalUnitarySet(std::vector<CMatrix> factors) : factors_(std::move(factors)) {
  for (const auto& u : factors_) {
    if (u.rows() != u.cols()) throw InputError("LocalUnitarySet: factor is not square");
    if (unitarity_defect(u) > kUnitaryTol) throw InputError("LocalUnitarySet: factor is not unitary");
  }
}

DensityMatrix partial_trace(const PureState& state, const PartySet& keep_in) {
  const int n = state.parties();
  const int d = state.local_dim();
  const PartySet keep = checked_sorted(keep_in, n);
  const PartySet rest = complement(keep, n);

  const auto keep_dim = static_cast<Eigen::Index>(ipow(d, static_cast<int>(keep.size())));
  const auto rest_dim = static_cast<Eigen::Index>(ipow(d, static_cast<int>(rest.size())));

  std::vector<bool> is_kept(static_cast<std::size_t>(n), false);
  for (int p : keep) is_kept[static_cast<std::size_t>(p)] = true;

  CMatrix m(keep_dim, rest_dim);
  const auto& amps = state.amplitudes();
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (Eigen::Index idx = 0; idx < amps.size(); ++idx) {
    auto rem = static_cast<std::size_t>(idx);
    for (int p = n - 1; p >= 0; --p) {
      digits[static_cast<std::size_t>(p)] = static_cast<int>(rem % static_cast<std::size_t>(d));
      rem /= static_cast<std::size_t>(d);
    }
    Eigen::Index row = 0;
    Eigen::Index col = 0;
    for (int p = 0; p < n; ++p) {
      if (is_kept[static_cast<std::size_t>(p)]) {
        row = row * d + digits[static_cast<std::size_t>(p)];
      } else {
        col = col * d + digits[static_cast<std::size_t>(p)];
      }
    }
    m(row, col) = amps(idx);
  }
  CMatrix rho = m * m.adjoint();
  return DensityMatrix(keep, d, std::move(rho));
}

double purity(const CMatrix& rho) {
  // Tr rho^2 = sum |rho_ab|^2 for Hermitian rho.
  return rho.cwiseAbs2().sum();
}

double purity(const DensityMatrix& rho) { return purity(rho.matrix()); }

double von_neumann_entropy(const CMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lam : es.eigenvalues()) {
    if (lam > kEntropyCutoff) s -= lam * std::log2(lam);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

PureState apply_local(const PureState& state, const LocalUnitarySet& us) {
  const int n = state.parties();
  const int d = state.local_dim();
  if (static_cast<int>(us.factors().size()) != n) {
    throw InputError("apply_local: need one factor per party");
  }
  for (const auto& u : us.factors()) {
    if (u.rows() != d) throw InputError("apply_local: factor dimension differs from local dimension");
  }

  CVector cur = state.amplitudes();
  CVector next(cur.size());
  for (int p = 0; p < n; ++p) {
    const auto& u = us.factors()[static_cast<std::size_t>(p)];
    const auto right = static_cast<Eigen::Index>(ipow(d, n - 1 - p));
    const auto left = static_cast<Eigen::Index>(ipow(d, p));
    for (Eigen::Index l = 0; l < left; ++l) {
      for (Eigen::Index r = 0; r < right; ++r) {
        for (Eigen::Index a = 0; a < d; ++a) {
          cplx acc = 0.0;
          for (Eigen::Index b = 0; b < d; ++b) acc += u(a, b) * cur((l * d + b) * right + r);
          next((l * d + a) * right + r) = acc;
        }
      }
    }
    std::swap(cur, next);
  }
  // Unitary factors keep the norm; make_state only absorbs round-off.
  return make_state(n, d, std::move(cur));
}

CMatrix haar_unitary(int dim, std::uint64_t seed) {
  if (dim < 1) throw InputError("haar_unitary: dim must be >= 1");
  std::mt19937_64 engine(seed);
  CMatrix z(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = standard_normal(engine);
      const double im = standard_normal(engine);
      z(i, j) = cplx(re, im) / std::sqrt(2.0);
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const cplx rjj = r(j, j);
    const double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : cplx(1.0);
  }
  return q;
}

PureState haar_state(int n, int d, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  CVector v(static_cast<Eigen::Index>(ipow(d, n)));
  for (auto& a : v) {
    const double re = standard_normal(engine);
    const double im = standard_normal(engine);
    a = cplx(re, im);
  }
  return make_state(n, d, std::move(v));
}

PartySet complement(const PartySet& subset, int n) {
  PartySet out;
  for (int p = 0; p < n; ++p) {
    if (std::find(subset.begin(), subset.end(), p) == subset.end()) out.push_back(p);
  }
  return out;
}

double unitarity_defect(const CMatrix& u) {
  return (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

}  // namespace multient
