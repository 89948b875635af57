#include "mke/classical.hpp"

#include <cmath>
#include <string>

#include "gibbs.hpp"

namespace mke {

ClassicalEstimate classical_mke_estimate(const ClassicalDistribution& prior,
                                         const ClassicalObservable& obs,
                                         double mean, double tol) {
  if (obs.values.size() != prior.size()) {
    throw DimMismatch("classical_mke_estimate: observable length " +
                      std::to_string(obs.values.size()) +
                      " does not match prior length " + std::to_string(prior.size()));
  }
  if (!(tol > 0.0)) {
    throw DomainError("classical_mke_estimate: tol must be positive");
  }
  detail::GibbsProblem prob;
  prob.weights = prior.values();
  prob.values = obs.values;
  prob.mean = mean;
  prob.tol = tol;
  detail::GibbsSolution sol = detail::solve_gibbs_mean(prob);
  return {ClassicalDistribution(std::move(sol.posterior)), sol.lambda,
          sol.partition, sol.residual, sol.iterations};
}

namespace {

using Vec = std::vector<double>;

double mean_of(const Vec& p, const Vec& a) {
  double m = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) m += p[k] * a[k];
  return m;
}

// dp_k = -(a_k - <a>_p) p_k
Vec derivative(const Vec& p, const Vec& a) {
  const double m = mean_of(p, a);
  Vec d(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) d[k] = -(a[k] - m) * p[k];
  return d;
}

Vec rk4_step(const Vec& p, const Vec& a, double h) {
  const Vec k1 = derivative(p, a);
  Vec tmp(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = p[i] + 0.5 * h * k1[i];
  const Vec k2 = derivative(tmp, a);
  for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = p[i] + 0.5 * h * k2[i];
  const Vec k3 = derivative(tmp, a);
  for (std::size_t i = 0; i < p.size(); ++i) tmp[i] = p[i] + h * k3[i];
  const Vec k4 = derivative(tmp, a);
  Vec out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    out[i] = p[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

}  // namespace

ClassicalTrajectoryResult classical_trajectory(const ClassicalDistribution& prior,
                                               const ClassicalObservable& obs,
                                               double mean, double lambda_max,
                                               double step) {
  if (obs.values.size() != prior.size()) {
    throw DimMismatch("classical_trajectory: observable length mismatch");
  }
  if (!(step > 0.0)) {
    throw DomainError("classical_trajectory: step must be positive");
  }

  Vec p = prior.values();
  const Vec& a = obs.values;
  double g = mean_of(p, a) - mean;
  if (g == 0.0) {
    return {prior, 0.0, 0};
  }

  const double dir = (g > 0.0) ? 1.0 : -1.0;
  const double h = dir * step;
  double lambda = 0.0;
  int steps = 0;
  while (std::abs(lambda) < lambda_max) {
    Vec next = rk4_step(p, a, h);
    ++steps;
    const double g_next = mean_of(next, a) - mean;
    if (g * g_next <= 0.0) {
      // Crossing inside this step: bisect on the step fraction.
      double flo = 0.0, fhi = 1.0;
      Vec plo = p;
      for (int i = 0; i < 60; ++i) {
        const double fmid = 0.5 * (flo + fhi);
        Vec pmid = rk4_step(p, a, h * fmid);
        if (g * (mean_of(pmid, a) - mean) > 0.0) {
          flo = fmid;
        } else {
          fhi = fmid;
        }
      }
      const double f = 0.5 * (flo + fhi);
      Vec pstop = rk4_step(p, a, h * f);
      return {ClassicalDistribution(std::move(pstop)), lambda + h * f, steps};
    }
    p = std::move(next);
    g = g_next;
    lambda += h;
  }
  throw SurfaceNotReached("constraint surface not crossed by |lambda| = " +
                          std::to_string(lambda_max));
}

}  // namespace mke
