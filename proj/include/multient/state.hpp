#pragma once

// Pure qudit states, reduced density matrices and local unitaries.
//
// Basis convention: party 0 is the most significant digit, so the basis
// index of |k_0 k_1 ... k_{n-1}> is sum_p k_p * d^(n-1-p). Party labels are
// 0-based in code; reports print them 1-based.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace multient {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

// Ascending list of 0-based party labels.
using PartySet = std::vector<int>;

std::size_t ipow(std::size_t base, int exp);

class PureState {
 public:
  int parties() const noexcept { return n_; }
  int local_dim() const noexcept { return d_; }
  const CVector& amplitudes() const noexcept { return amps_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(amps_.size()); }

 private:
  PureState(int n, int d, CVector amps) : n_(n), d_(d), amps_(std::move(amps)) {}
  friend PureState make_state(int n, int d, CVector amps);

  int n_;
  int d_;
  CVector amps_;
};

// Normalizes `amps`. Throws InputError on a shape mismatch, a zero vector,
// or non-finite entries.
PureState make_state(int n, int d, CVector amps);
PureState make_state(int n, int d, const std::vector<cplx>& amps);

class DensityMatrix {
 public:
  // Validating constructor: Hermitian and unit trace within 1e-12,
  // eigenvalues >= -1e-10.
  static DensityMatrix from_matrix(PartySet parties, int d, CMatrix mat);

  const PartySet& parties() const noexcept { return parties_; }
  int local_dim() const noexcept { return d_; }
  const CMatrix& matrix() const noexcept { return mat_; }
  Eigen::Index dim() const noexcept { return mat_.rows(); }

 private:
  DensityMatrix(PartySet parties, int d, CMatrix mat)
      : parties_(std::move(parties)), d_(d), mat_(std::move(mat)) {}
  friend DensityMatrix partial_trace(const PureState&, const PartySet&);

  PartySet parties_;
  int d_;
  CMatrix mat_;
};

class LocalUnitarySet {
 public:
  // One d x d unitary per party; each must satisfy U U^dagger = I within 1e-10.
  explicit LocalUnitarySet(std::vector<CMatrix> factors);

  const std::vector<CMatrix>& factors() const noexcept { return factors_; }

 private:
  std::vector<CMatrix> factors_;
};

// Reduced state on `keep` (nonempty proper subset, any order; sorted
// internally). Computed as M M^dagger with M the (keep x rest) reshaping of
// the amplitudes; the d^n x d^n projector is never formed.
DensityMatrix partial_trace(const PureState& state, const PartySet& keep);

// Tr rho^2.
double purity(const DensityMatrix& rho);
double purity(const CMatrix& rho);

// Base-2 entropy; eigenvalues below 1e-12 contribute nothing.
double von_neumann_entropy(const DensityMatrix& rho);
double von_neumann_entropy(const CMatrix& rho);

PureState apply_local(const PureState& state, const LocalUnitarySet& us);

// Haar-distributed unitary (QR of a complex Ginibre matrix with the phase
// fix), deterministic in `seed`.
CMatrix haar_unitary(int dim, std::uint64_t seed);

// Haar-random pure state, deterministic in `seed`.
PureState haar_state(int n, int d, std::uint64_t seed);

// Complement of `subset` in {0..n-1}.
PartySet complement(const PartySet& subset, int n);

// Max |U U^dagger - I|.
double unitarity_defect(const CMatrix& u);

}  // namespace multient
