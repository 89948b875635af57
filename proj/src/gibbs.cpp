#include "gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mke/errors.hpp"

namespace mke::detail {

namespace {

struct Moments {
  double z_shifted;   // sum w_k e^{-a_k lambda - shift}
  double mean;
  double shift;
};

Moments moments_at(const std::vector<double>& w, const std::vector<double>& a,
                   double lambda, double support_cut) {
  double shift = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] > support_cut) shift = std::max(shift, -a[k] * lambda);
  }
  double s0 = 0.0, s1 = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] <= support_cut) continue;
    const double e = std::exp(-a[k] * lambda - shift);
    s0 += w[k] * e;
    s1 += w[k] * a[k] * e;
  }
  return {s0, s1 / s0, shift};
}

}  // namespace

double gibbs_mean_at(const std::vector<double>& w, const std::vector<double>& a,
                     double lambda) {
  return moments_at(w, a, lambda, 1e-15).mean;
}

GibbsSolution solve_gibbs_mean(const GibbsProblem& prob) {
  const auto& w = prob.weights;
  const auto& a = prob.values;

  double a_min = std::numeric_limits<double>::infinity();
  double a_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] > prob.support_cut) {
      a_min = std::min(a_min, a[k]);
      a_max = std::max(a_max, a[k]);
    }
  }
  if (!std::isfinite(a_min)) {
    throw InvalidDistribution("gibbs solve: prior has empty support");
  }

  auto posterior_at = [&](double lambda, GibbsSolution& out) {
    const Moments mm = moments_at(w, a, lambda, prob.support_cut);
    out.lambda = lambda;
    out.partition = mm.z_shifted * std::exp(mm.shift);
    out.residual = std::abs(mm.mean - prob.mean);
    out.posterior.assign(w.size(), 0.0);
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] > prob.support_cut) {
        out.posterior[k] =
            w[k] * std::exp(-a[k] * lambda - mm.shift) / mm.z_shifted;
      }
    }
    return mm.mean;
  };

  // Degenerate support: a single attainable value.
  if (a_max - a_min <= 1e-14 * std::max(1.0, std::abs(a_max))) {
    if (std::abs(prob.mean - a_min) <= 1e-12 * std::max(1.0, std::abs(a_min))) {
      GibbsSolution out;
      posterior_at(0.0, out);
      out.residual = 0.0;
      return out;
    }
    if (prob.quantum) {
      throw DegenerateSupport(
          "prior support is concentrated on eigenvalue " + std::to_string(a_min) +
          " but the target mean is " + std::to_string(prob.mean));
    }
    throw DegenerateObservable(
        "all observable values on the prior support equal " + std::to_string(a_min) +
        " but the target mean is " + std::to_string(prob.mean));
  }

  GibbsSolution out;
  const double mean0 = posterior_at(0.0, out);
  if (mean0 == prob.mean) {
    return out;  // lambda = 0 exactly when the prior already satisfies the constraint
  }

  if (!(prob.mean > a_min && prob.mean < a_max)) {
    throw InfeasibleMean("target mean " + std::to_string(prob.mean) +
                         " is outside the attainable open interval (" +
                         std::to_string(a_min) + ", " + std::to_string(a_max) + ")");
  }

  // mean(lambda) decreases in lambda; bracket by doubling outward from 0.
  const double dir = (mean0 > prob.mean) ? 1.0 : -1.0;
  double lo = 0.0, hi = dir;
  int iters = 1;
  GibbsSolution probe;
  for (int i = 0; i < 200; ++i) {
    ++iters;
    const double m = posterior_at(hi, probe);
    if ((m - prob.mean) * dir <= 0.0) break;
    lo = hi;
    hi *= 2.0;
  }

  // Bisection on [lo, hi] (ordered by |.|, same sign as dir).
  while (std::abs(hi - lo) >
         1e-15 * std::max({1.0, std::abs(lo), std::abs(hi)})) {
    ++iters;
    const double mid = 0.5 * (lo + hi);
    const double m = posterior_at(mid, probe);
    if ((m - prob.mean) * dir > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }

  posterior_at(0.5 * (lo + hi), out);
  out.iterations = iters;
  if (!(out.residual <= prob.tol)) {
    throw NonConvergence("gibbs solve: residual " + std::to_string(out.residual) +
                             " above tolerance after bisection",
                         out.residual, iters);
  }
  return out;
}

}  // namespace mke::detail
