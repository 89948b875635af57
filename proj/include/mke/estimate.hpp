#pragma once

#include <vector>

#include "mke/distribution.hpp"
#include "mke/linalg.hpp"
#include "mke/state.hpp"

namespace mke {

struct MeanConstraint {
  Observable observable;
  double mean;
};

/// Complete projective measurement with its outcome distribution: basis
/// columns must be orthonormal and span the space.
struct DistributionConstraint {
  ComplexMatrix basis;  // columns |phi_k>
  ClassicalDistribution probabilities;
};

struct EstimationResult {
  DensityMatrix posterior;
  std::vector<double> lambdas;
  double partition;
  double relative_entropy;  // K(posterior | prior), may be +inf
  double residual;          // worst constraint violation
  int iterations;
};

/// Posterior e^{-A lambda/2} tau e^{-A lambda/2} / Z from a single measured
/// mean. lambda is the root of -d/dlambda ln Z = mean on the strictly
/// decreasing Gibbs-mean map; lambda = 0 and posterior = tau exactly when the
/// mean equals Tr[tau A].
EstimationResult mke_single_mean(const DensityMatrix& tau, const MeanConstraint& c,
                                 double tol = 1e-9);

/// Posterior e^{-sum_k A_k lambda_k/2} tau e^{-sum_k A_k lambda_k/2} / Z from
/// several measured means. The multiplier vector is found by damped Newton
/// iteration with a finite-difference Jacobian, starting from lambda = 0 and
/// restarting from small random multipliers before declaring the constraint
/// set infeasible.
EstimationResult mke_multi_mean(const DensityMatrix& tau,
                                const std::vector<MeanConstraint>& constraints,
                                double tol = 1e-9, int max_iter = 200);

/// Closed-form posterior from a complete measured distribution:
///   rho_mn = tau_mn / sqrt(tau_mm tau_nn) * sqrt(p_m p_n)
/// in the measurement basis. Multipliers are back-substituted in the Z = 1
/// gauge: lambda_k = ln(w_k / p_k), +inf for outcomes with p_k below the
/// support threshold.
EstimationResult mke_from_distribution(const DensityMatrix& tau,
                                       const DistributionConstraint& c);

/// Integrates d rho/d lambda = -1/2 {rho, A - <A>_rho} from tau with
/// fixed-step classic Runge-Kutta up to lambda_target.
DensityMatrix quantum_trajectory(const DensityMatrix& tau, const Observable& obs,
                                 double lambda_target, double step);

}  // namespace mke
