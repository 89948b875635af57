#include "mke/linalg.hpp"

#include <cmath>
#include <string>

namespace mke {

HermitianOperator::HermitianOperator(ComplexMatrix m) {
  if (m.rows() != m.cols()) {
    throw DimMismatch("HermitianOperator: matrix is " + std::to_string(m.rows()) +
                      "x" + std::to_string(m.cols()) + ", not square");
  }
  if (!m.allFinite()) {
    throw InvalidState("HermitianOperator: non-finite entries");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.adjoint().eval()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw NonHermitianInput("HermitianOperator: asymmetry " + std::to_string(asym) +
                            " exceeds tolerance");
  }
  matrix_ = 0.5 * (m + m.adjoint().eval());
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

namespace {

// Rotate each column's phase so its first nonzero component is real positive.
void fix_phases(ComplexMatrix& vecs) {
  for (Eigen::Index k = 0; k < vecs.cols(); ++k) {
    for (Eigen::Index i = 0; i < vecs.rows(); ++i) {
      const Complex c = vecs(i, k);
      if (std::abs(c) > 1e-12) {
        vecs.col(k) *= std::conj(c) / std::abs(c);
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition eigh(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(op.matrix());
  if (solver.info() != Eigen::Success) {
    throw InvalidState("eigh: eigensolver failed");
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues();  // ascending
  out.eigenvectors = solver.eigenvectors();
  fix_phases(out.eigenvectors);
  return out;
}

HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f) {
  const SpectralDecomposition sd = eigh(op);
  RealVector mapped(sd.eigenvalues.size());
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    const double v = f(sd.eigenvalues[k]);
    if (!std::isfinite(v)) {
      throw DomainError("matrix_function: f not finite at eigenvalue " +
                        std::to_string(sd.eigenvalues[k]));
    }
    mapped[k] = v;
  }
  return HermitianOperator(sd.eigenvectors * mapped.asDiagonal() *
                           sd.eigenvectors.adjoint());
}

HermitianOperator matrix_function_on_support(
    const HermitianOperator& op, const std::function<double(double)>& f) {
  const SpectralDecomposition sd = eigh(op);
  const double cut = eps_supp * sd.eigenvalues.cwiseAbs().maxCoeff();
  ComplexMatrix out = ComplexMatrix::Zero(op.dim(), op.dim());
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    if (std::abs(sd.eigenvalues[k]) <= cut) continue;
    const double v = f(sd.eigenvalues[k]);
    if (!std::isfinite(v)) {
      throw DomainError("matrix_function_on_support: f not finite at eigenvalue " +
                        std::to_string(sd.eigenvalues[k]));
    }
    out += v * (sd.eigenvectors.col(k) * sd.eigenvectors.col(k).adjoint());
  }
  return HermitianOperator(std::move(out));
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimMismatch("frobenius_distance: dimension mismatch");
  }
  return (a - b).norm();
}

}  // namespace mke
