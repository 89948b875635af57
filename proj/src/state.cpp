#include "mke/state.hpp"

#include <cmath>
#include <string>

namespace mke {

DensityMatrix::DensityMatrix(const ComplexMatrix& m) {
  HermitianOperator op(m);  // validates squareness/Hermiticity, symmetrizes
  const double tr = op.matrix().trace().real();
  if (std::abs(tr - 1.0) > 1e-10) {
    throw InvalidState("DensityMatrix: trace " + std::to_string(tr) +
                       " differs from 1 beyond 1e-10");
  }
  SpectralDecomposition sd = eigh(op);
  const double min_eig = sd.eigenvalues.minCoeff();
  if (min_eig < -1e-10) {
    throw InvalidState("DensityMatrix: eigenvalue " + std::to_string(min_eig) +
                       " below -1e-10");
  }
  if (min_eig < 0.0) {
    RealVector clipped = sd.eigenvalues.cwiseMax(0.0);
    matrix_ = sd.eigenvectors * clipped.asDiagonal() * sd.eigenvectors.adjoint();
  } else {
    matrix_ = op.matrix();
  }
  matrix_ /= matrix_.trace().real();
  matrix_ = 0.5 * (matrix_ + matrix_.adjoint().eval());
}

}  // namespace mke
