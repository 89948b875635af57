#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "mke/errors.hpp"

namespace mke {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Numerical support threshold, relative to the largest eigenvalue in
/// magnitude. Eigenvalues below eps_supp * max are treated as exactly zero
/// everywhere in the library.
inline constexpr double eps_supp = 1e-12;

/// Hermitian matrix. Construction checks entry(m,n) == conj(entry(n,m))
/// within 1e-12 (relative to the largest entry) and then symmetrizes, so the
/// stored matrix is exactly Hermitian.
class HermitianOperator {
public:
  explicit HermitianOperator(ComplexMatrix m);

  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

private:
  ComplexMatrix matrix_;
};

/// Eigensystem of a HermitianOperator: ascending eigenvalues, orthonormal
/// eigenvector columns with the phase fixed so that the first nonzero
/// component of each eigenvector is real positive.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

SpectralDecomposition eigh(const HermitianOperator& op);

/// Sum_k f(a_k) |phi_k><phi_k| over all eigenvalues. Throws DomainError if f
/// is not finite on some eigenvalue.
HermitianOperator matrix_function(const HermitianOperator& op,
                                  const std::function<double(double)>& f);

/// Same, but eigenvalues below eps_supp * max|eigenvalue| are excluded from
/// the sum (treated as exactly zero). Use for functions such as log that are
/// undefined at zero.
HermitianOperator matrix_function_on_support(
    const HermitianOperator& op, const std::function<double(double)>& f);

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Hermitian observable with its spectral decomposition cached at
/// construction.
class Observable {
public:
  explicit Observable(HermitianOperator op)
      : op_(std::move(op)), spectral_(eigh(op_)) {}
  explicit Observable(ComplexMatrix m) : Observable(HermitianOperator(std::move(m))) {}

  Eigen::Index dim() const { return op_.dim(); }
  const HermitianOperator& op() const { return op_; }
  const ComplexMatrix& matrix() const { return op_.matrix(); }
  const SpectralDecomposition& spectral() const { return spectral_; }

private:
  HermitianOperator op_;
  SpectralDecomposition spectral_;
};

}  // namespace mke
