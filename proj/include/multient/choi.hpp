#pragma once

// Operator-to-state mapping for two-qudit operators and the reshaping maps
// (realignments R1/R2, partial transposes T1/T2).
//
// A d^2 x d^2 operator has rows labelled by the composite index (i, alpha)
// = i*d + alpha and columns by (j, beta). Its four-party state has amplitude
// <i alpha|A|j beta> / ||A||_F on the basis vector |i alpha j beta>, i.e. the
// row-major flattening of A.

#include <array>

#include "multient/state.hpp"

namespace multient {

class BipartiteOperator {
 public:
  // Throws InputError unless `mat` is d^2 x d^2 with d >= 2.
  BipartiteOperator(int d, CMatrix mat);

  int local_dim() const noexcept { return d_; }
  const CMatrix& matrix() const noexcept { return mat_; }

  static BipartiteOperator identity(int d);
  static BipartiteOperator swap(int d);

 private:
  int d_;
  CMatrix mat_;
};

enum class Reshape { R1, R2, T1, T2 };

// Entrywise re-indexing, all maps with <i alpha|A|j beta> equal to
//   R1: <beta alpha|A^R1|j i>    R2: <i j|A^R2|alpha beta>
//   T1: <j alpha|A^T1|i beta>    T2: <i beta|A^T2|j alpha>
BipartiteOperator reshape(const BipartiteOperator& a, Reshape kind);

// Normalized four-party state |A>. Throws InputError for the zero operator.
PureState op_to_state(const BipartiteOperator& a);

struct PairMarginals {
  CMatrix rho12;
  CMatrix rho13;
  CMatrix rho14;
};

// rho12 ~ A A^dag, rho13 ~ A^R2 A^R2^dag, rho14 ~ A^T2 A^T2^dag, each scaled
// to unit trace. The complementary marginals share these purities.
PairMarginals pair_marginals(const BipartiteOperator& a);

struct DualUnitaryFlags {
  bool r2 = false;
  bool t2 = false;
};

// Whether A^R2 / A^T2 stay unitary. A itself must be unitary within `tol`.
DualUnitaryFlags is_dual_unitary(const BipartiteOperator& a, double tol = 1e-10);

}  // namespace multient
