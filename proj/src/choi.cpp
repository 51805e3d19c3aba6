#include "multient/choi.hpp"

#include "multient/errors.hpp"

namespace multient {

namespace {

CMatrix unit_trace_gram(const CMatrix& m) {
  CMatrix g = m * m.adjoint();
  return g / g.trace().real();
}

}  // namespace

BipartiteOperator::BipartiteOperator(int d, CMatrix mat) : d_(d), mat_(std::move(mat)) {
  if (d < 2) throw InputError("BipartiteOperator: local dimension must be >= 2");
  const auto dim = static_cast<Eigen::Index>(d) * d;
  if (mat_.rows() != dim || mat_.cols() != dim) {
    throw InputError("BipartiteOperator: matrix must be d^2 x d^2");
  }
}

BipartiteOperator BipartiteOperator::identity(int d) {
  const auto dim = static_cast<Eigen::Index>(d) * d;
  return BipartiteOperator(d, CMatrix::Identity(dim, dim));
}

BipartiteOperator BipartiteOperator::swap(int d) {
  const auto dim = static_cast<Eigen::Index>(d) * d;
  CMatrix s = CMatrix::Zero(dim, dim);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  }
  return BipartiteOperator(d, std::move(s));
}

BipartiteOperator reshape(const BipartiteOperator& a, Reshape kind) {
  const int d = a.local_dim();
  const auto& m = a.matrix();
  CMatrix out(m.rows(), m.cols());
  for (int i = 0; i < d; ++i) {
    for (int al = 0; al < d; ++al) {
      for (int j = 0; j < d; ++j) {
        for (int be = 0; be < d; ++be) {
          const cplx v = m(i * d + al, j * d + be);
          switch (kind) {
            case Reshape::R1: out(be * d + al, j * d + i) = v; break;
            case Reshape::R2: out(i * d + j, al * d + be) = v; break;
            case Reshape::T1: out(j * d + al, i * d + be) = v; break;
            case Reshape::T2: out(i * d + be, j * d + al) = v; break;
          }
        }
      }
    }
  }
  return BipartiteOperator(d, std::move(out));
}

PureState op_to_state(const BipartiteOperator& a) {
  const auto& m = a.matrix();
  if (m.squaredNorm() == 0.0) throw InputError("op_to_state: zero operator");
  CVector v(m.size());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) v(r * m.cols() + c) = m(r, c);
  }
  return make_state(4, a.local_dim(), std::move(v));
}

PairMarginals pair_marginals(const BipartiteOperator& a) {
  if (a.matrix().squaredNorm() == 0.0) throw InputError("pair_marginals: zero operator");
  return PairMarginals{
      unit_trace_gram(a.matrix()),
      unit_trace_gram(reshape(a, Reshape::R2).matrix()),
      unit_trace_gram(reshape(a, Reshape::T2).matrix()),
  };
}

DualUnitaryFlags is_dual_unitary(const BipartiteOperator& a, double tol) {
  if (unitarity_defect(a.matrix()) > tol) {
    throw InputError("is_dual_unitary: operator is not unitary");
  }
  return DualUnitaryFlags{
      unitarity_defect(reshape(a, Reshape::R2).matrix()) <= tol,
      unitarity_defect(reshape(a, Reshape::T2).matrix()) <= tol,
  };
}

}  // namespace multient
