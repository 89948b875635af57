#include "mke/simulate.hpp"

#include <cmath>
#include <string>

#include "mke/kernels.hpp"

namespace mke {

ClassicalDistribution ShotSample::frequencies() const {
  std::vector<double> f(counts.size());
  for (std::size_t k = 0; k < counts.size(); ++k) {
    f[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
  }
  return ClassicalDistribution(std::move(f));
}

double exact_mean(const DensityMatrix& rho, const Observable& obs) {
  if (rho.dim() != obs.dim()) {
    throw DimMismatch("exact_mean: dimension mismatch");
  }
  const Complex tr = (rho.matrix() * obs.matrix()).trace();
  if (std::abs(tr.imag()) > 1e-12 * std::max(1.0, std::abs(tr.real()))) {
    throw InvalidState("exact_mean: trace has non-negligible imaginary part " +
                       std::to_string(tr.imag()));
  }
  return tr.real();
}

ClassicalDistribution exact_distribution(const DensityMatrix& rho,
                                         const ComplexMatrix& basis) {
  const Eigen::Index d = rho.dim();
  if (basis.rows() != d || basis.cols() != d) {
    throw IncompleteBasis("exact_distribution: basis must hold " + std::to_string(d) +
                          " orthonormal columns of dimension " + std::to_string(d));
  }
  if ((basis.adjoint() * basis - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() >
      1e-10) {
    throw IncompleteBasis("exact_distribution: basis columns are not orthonormal");
  }
  std::vector<double> p(static_cast<std::size_t>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    p[static_cast<std::size_t>(k)] = std::max(
        0.0, (basis.col(k).adjoint() * rho.matrix() * basis.col(k))(0, 0).real());
  }
  return ClassicalDistribution(std::move(p));
}

ShotSample sample_outcomes(const ClassicalDistribution& p, std::int64_t shots,
                           std::uint64_t seed) {
  if (shots < 1) {
    throw DomainError("sample_outcomes: shots must be at least 1");
  }
  std::vector<double> cdf(p.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    acc += p[k];
    cdf[k] = acc;
  }
  return {kernels::multinomial_counts(cdf, shots, seed), shots, seed};
}

DensityMatrix evolve_unitary(const DensityMatrix& tau, const HermitianOperator& h,
                             double t) {
  if (tau.dim() != h.dim()) {
    throw DimMismatch("evolve_unitary: dimension mismatch");
  }
  const SpectralDecomposition sd = eigh(h);
  ComplexVector phases(h.dim());
  for (Eigen::Index k = 0; k < h.dim(); ++k) {
    phases[k] = std::exp(Complex(0.0, -sd.eigenvalues[k] * t));
  }
  const ComplexMatrix u =
      sd.eigenvectors * phases.asDiagonal() * sd.eigenvectors.adjoint();
  return DensityMatrix(ComplexMatrix(u * tau.matrix() * u.adjoint()));
}

ComplexMatrix first_order_state(const DensityMatrix& tau, const HermitianOperator& h,
                                double t) {
  if (tau.dim() != h.dim()) {
    throw DimMismatch("first_order_state: dimension mismatch");
  }
  const ComplexMatrix comm = tau.matrix() * h.matrix() - h.matrix() * tau.matrix();
  return tau.matrix() + Complex(0.0, t) * comm;
}

}  // namespace mke
