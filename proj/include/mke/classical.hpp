#pragma once

#include <vector>

#include "mke/distribution.hpp"

namespace mke {

/// Real-valued observable on a finite classical state space.
struct ClassicalObservable {
  std::vector<double> values;
};

struct ClassicalEstimate {
  ClassicalDistribution posterior;
  double lambda;
  double partition;
  double residual;
  int iterations;
};

/// Minimum-relative-entropy posterior p_k = q_k e^{-A_k lambda}/Z under the
/// first-moment constraint sum_k p_k A_k = mean. lambda is the unique root of
/// the strictly decreasing Gibbs-mean map; lambda = 0 exactly when the prior
/// already has the target mean. Prior entries at or below 1e-15 are treated
/// as outside the support.
ClassicalEstimate classical_mke_estimate(const ClassicalDistribution& prior,
                                         const ClassicalObservable& obs,
                                         double mean, double tol);

struct ClassicalTrajectoryResult {
  ClassicalDistribution posterior;
  double lambda;  // stopping point
  int steps;
};

/// Integrates dp_k/dlambda = -(A_k - <A>_p) p_k from p(0) = prior with
/// fixed-step classic Runge-Kutta, stopping at the first crossing of the
/// constraint surface sum p_k A_k = mean (refined inside the crossing step),
/// or throwing SurfaceNotReached at |lambda| = lambda_max. The integration
/// runs toward the surface, i.e. in the sign direction of (prior mean - mean).
ClassicalTrajectoryResult classical_trajectory(const ClassicalDistribution& prior,
                                               const ClassicalObservable& obs,
                                               double mean, double lambda_max,
                                               double step);

}  // namespace mke
