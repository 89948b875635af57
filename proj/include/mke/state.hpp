#pragma once

#include "mke/linalg.hpp"

namespace mke {

/// Trace-one positive-semidefinite Hermitian matrix. Construction tolerates
/// eigenvalues down to -1e-10 (clipped to zero) and trace deviations up to
/// 1e-10 (renormalized), so the stored matrix is exactly unit trace and PSD.
class DensityMatrix {
public:
  explicit DensityMatrix(const ComplexMatrix& m);
  explicit DensityMatrix(const HermitianOperator& op) : DensityMatrix(op.matrix()) {}

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  Complex operator()(Eigen::Index m, Eigen::Index n) const { return matrix_(m, n); }

  HermitianOperator as_operator() const { return HermitianOperator(matrix_); }

private:
  ComplexMatrix matrix_;
};

}  // namespace mke
