#pragma once

// Shared scalar solve for the Gibbs-mean map. Both the classical posterior
// q_k e^{-A_k lambda}/Z and the quantum single-mean posterior reduce, on the
// observable's eigenbasis diagonal, to the same problem: find lambda with
//   mean(lambda) = sum_k w_k a_k e^{-a_k lambda} / sum_k w_k e^{-a_k lambda}
// equal to the target. mean(lambda) is strictly decreasing (its derivative is
// minus a variance), so bracketing by outward doubling plus bisection always
// converges.

#include <vector>

namespace mke::detail {

struct GibbsSolution {
  double lambda = 0.0;
  double partition = 1.0;  // Z = sum_k w_k e^{-a_k lambda}
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> posterior;  // w_k e^{-a_k lambda} / Z
};

struct GibbsProblem {
  std::vector<double> weights;  // nonnegative, need not be normalized
  std::vector<double> values;   // a_k
  double mean = 0.0;
  double tol = 1e-9;
  double support_cut = 1e-15;   // weights at or below this are outside support
  // Error reporting: "classical" throws DegenerateObservable/InfeasibleMean
  // with classical wording, "quantum" throws DegenerateSupport/InfeasibleMean.
  bool quantum = false;
};

GibbsSolution solve_gibbs_mean(const GibbsProblem& prob);

// mean(lambda) and Z for given lambda (log-sum-exp stabilized).
double gibbs_mean_at(const std::vector<double>& w, const std::vector<double>& a,
                     double lambda);

}  // namespace mke::detail
