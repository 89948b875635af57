#include "mke/estimate.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "gibbs.hpp"
#include "mke/entropy.hpp"
#include "mke/kernels.hpp"

namespace mke {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> prior_weights(const DensityMatrix& tau,
                                  const SpectralDecomposition& sd) {
  std::vector<double> w(static_cast<std::size_t>(sd.eigenvalues.size()));
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    w[static_cast<std::size_t>(k)] = std::max(
        0.0, (sd.eigenvectors.col(k).adjoint() * tau.matrix() *
              sd.eigenvectors.col(k))(0, 0).real());
  }
  return w;
}

double real_mean(const DensityMatrix& rho, const Observable& obs) {
  return (rho.matrix() * obs.matrix()).trace().real();
}

}  // namespace

EstimationResult mke_single_mean(const DensityMatrix& tau, const MeanConstraint& c,
                                 double tol) {
  if (tau.dim() != c.observable.dim()) {
    throw DimMismatch("mke_single_mean: dimension mismatch");
  }
  if (!(tol > 0.0)) {
    throw DomainError("mke_single_mean: tol must be positive");
  }
  const SpectralDecomposition& sd = c.observable.spectral();

  detail::GibbsProblem prob;
  prob.weights = prior_weights(tau, sd);
  prob.values.assign(sd.eigenvalues.data(),
                     sd.eigenvalues.data() + sd.eigenvalues.size());
  prob.mean = c.mean;
  prob.tol = tol;
  prob.support_cut = eps_supp;
  prob.quantum = true;
  const detail::GibbsSolution sol = detail::solve_gibbs_mean(prob);

  if (sol.lambda == 0.0) {
    return {tau, {0.0}, sol.partition, 0.0, sol.residual, sol.iterations};
  }

  // Matrix elements in the observable eigenbasis:
  //   <m|rho|n> = e^{-(a_m + a_n) lambda / 2} <m|tau|n> / Z,
  // computed with a common exponent shift for overflow safety.
  const Eigen::Index d = tau.dim();
  double shift = -kInf;
  for (Eigen::Index k = 0; k < d; ++k) {
    shift = std::max(shift, -sd.eigenvalues[k] * sol.lambda * 0.5);
  }
  RealVector w(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    w[k] = std::exp(-sd.eigenvalues[k] * sol.lambda * 0.5 - shift);
  }
  const ComplexMatrix tau_eig =
      sd.eigenvectors.adjoint() * tau.matrix() * sd.eigenvectors;
  ComplexMatrix rho_eig = kernels::scaled_congruence(w, tau_eig);
  rho_eig /= rho_eig.trace().real();
  const ComplexMatrix rho = sd.eigenvectors * rho_eig * sd.eigenvectors.adjoint();

  DensityMatrix posterior(rho);
  const double residual = std::abs(real_mean(posterior, c.observable) - c.mean);
  return {posterior,
          {sol.lambda},
          sol.partition,
          quantum_kullback(posterior, tau),
          residual,
          sol.iterations};
}

namespace {

struct MultiState {
  DensityMatrix rho;
  double partition;
};

MultiState multi_posterior(const DensityMatrix& tau,
                           const std::vector<MeanConstraint>& cs,
                           const Eigen::VectorXd& lambdas) {
  const Eigen::Index d = tau.dim();
  ComplexMatrix gen = ComplexMatrix::Zero(d, d);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    gen += lambdas[static_cast<Eigen::Index>(k)] * cs[k].observable.matrix();
  }
  // Single exponential of the summed generator; no operator splitting.
  const SpectralDecomposition sd = eigh(HermitianOperator(gen));
  double shift = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < d; ++k) shift = std::max(shift, -0.5 * sd.eigenvalues[k]);
  RealVector w(d);
  for (Eigen::Index k = 0; k < d; ++k) {
    w[k] = std::exp(-0.5 * sd.eigenvalues[k] - shift);
  }
  const ComplexMatrix tau_eig =
      sd.eigenvectors.adjoint() * tau.matrix() * sd.eigenvectors;
  ComplexMatrix rho_eig = kernels::scaled_congruence(w, tau_eig);
  const double z_shifted = rho_eig.trace().real();
  rho_eig /= z_shifted;
  return {DensityMatrix(sd.eigenvectors * rho_eig * sd.eigenvectors.adjoint()),
          z_shifted * std::exp(2.0 * shift)};
}

Eigen::VectorXd multi_residual(const DensityMatrix& rho,
                               const std::vector<MeanConstraint>& cs) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(cs.size()));
  for (std::size_t k = 0; k < cs.size(); ++k) {
    r[static_cast<Eigen::Index>(k)] =
        (rho.matrix() * cs[k].observable.matrix()).trace().real() - cs[k].mean;
  }
  return r;
}

struct NewtonOutcome {
  Eigen::VectorXd lambdas;
  double residual_norm;
  int iterations;
  bool converged;
};

NewtonOutcome newton_run(const DensityMatrix& tau,
                         const std::vector<MeanConstraint>& cs,
                         Eigen::VectorXd lambdas, double tol, int max_iter) {
  const auto n = static_cast<Eigen::Index>(cs.size());
  Eigen::VectorXd f = multi_residual(multi_posterior(tau, cs, lambdas).rho, cs);
  double fnorm = f.norm();
  int iters = 0;
  while (iters < max_iter) {
    if (fnorm <= tol) return {lambdas, fnorm, iters, true};
    ++iters;
    // Finite-difference Jacobian, relative step 1e-6.
    Eigen::MatrixXd jac(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(lambdas[j]));
      Eigen::VectorXd probe = lambdas;
      probe[j] += h;
      jac.col(j) =
          (multi_residual(multi_posterior(tau, cs, probe).rho, cs) - f) / h;
    }
    const Eigen::VectorXd delta = jac.colPivHouseholderQr().solve(-f);
    if (!delta.allFinite()) {
      return {lambdas, fnorm, iters, false};
    }
    // Step halving until the residual norm decreases.
    double scale = 1.0;
    bool improved = false;
    while (scale >= std::ldexp(1.0, -20)) {
      const Eigen::VectorXd cand = lambdas + scale * delta;
      const Eigen::VectorXd fc = multi_residual(multi_posterior(tau, cs, cand).rho, cs);
      if (fc.norm() < fnorm) {
        lambdas = cand;
        f = fc;
        fnorm = fc.norm();
        improved = true;
        break;
      }
      scale *= 0.5;
    }
    if (!improved) {
      return {lambdas, fnorm, iters, false};  // stalled
    }
  }
  return {lambdas, fnorm, iters, fnorm <= tol};
}

}  // namespace

EstimationResult mke_multi_mean(const DensityMatrix& tau,
                                const std::vector<MeanConstraint>& constraints,
                                double tol, int max_iter) {
  if (constraints.empty()) {
    throw DomainError("mke_multi_mean: no constraints given");
  }
  for (const auto& c : constraints) {
    if (c.observable.dim() != tau.dim()) {
      throw DimMismatch("mke_multi_mean: constraint dimension mismatch");
    }
  }
  if (!(tol > 0.0)) {
    throw DomainError("mke_multi_mean: tol must be positive");
  }

  const auto n = static_cast<Eigen::Index>(constraints.size());
  NewtonOutcome best =
      newton_run(tau, constraints, Eigen::VectorXd::Zero(n), tol, max_iter);
  int total_iters = best.iterations;
  if (!best.converged) {
    // Restart from small random multipliers (fixed internal stream for
    // reproducibility) before judging feasibility.
    for (std::uint64_t r = 0; r < 5 && !best.converged; ++r) {
      Eigen::VectorXd start(n);
      for (Eigen::Index j = 0; j < n; ++j) {
        start[j] = 0.2 * kernels::unit_double(0x6d6b65u + r, static_cast<std::uint64_t>(j)) - 0.1;
      }
      NewtonOutcome run = newton_run(tau, constraints, start, tol, max_iter);
      total_iters += run.iterations;
      if (run.converged || run.residual_norm < best.residual_norm) best = run;
    }
    if (!best.converged) {
      if (best.residual_norm > 1e3 * tol) {
        throw InfeasibleConstraints(
            "multiplier iteration stalled with residual " +
            std::to_string(best.residual_norm) + " across restarts");
      }
      throw NonConvergence("multiplier iteration did not reach tolerance",
                           best.residual_norm, total_iters);
    }
  }

  const MultiState ms = multi_posterior(tau, constraints, best.lambdas);
  const Eigen::VectorXd f = multi_residual(ms.rho, constraints);
  std::vector<double> lambdas(best.lambdas.data(), best.lambdas.data() + n);
  return {ms.rho,
          std::move(lambdas),
          ms.partition,
          quantum_kullback(ms.rho, tau),
          f.cwiseAbs().maxCoeff(),
          total_iters};
}

EstimationResult mke_from_distribution(const DensityMatrix& tau,
                                       const DistributionConstraint& c) {
  const Eigen::Index d = tau.dim();
  if (c.basis.rows() != d || c.basis.cols() != d) {
    throw IncompleteBasis("mke_from_distribution: basis must be a complete " +
                          std::to_string(d) + "-vector orthonormal set");
  }
  if ((c.basis.adjoint() * c.basis - ComplexMatrix::Identity(d, d))
          .cwiseAbs()
          .maxCoeff() > 1e-10) {
    throw IncompleteBasis("mke_from_distribution: basis columns are not orthonormal");
  }
  if (static_cast<Eigen::Index>(c.probabilities.size()) != d) {
    throw DimMismatch("mke_from_distribution: probability vector length mismatch");
  }

  const ComplexMatrix tau_b = c.basis.adjoint() * tau.matrix() * c.basis;
  RealVector w(d);
  for (Eigen::Index k = 0; k < d; ++k) w[k] = std::max(0.0, tau_b(k, k).real());

  RealVector scale(d);
  std::vector<double> lambdas(static_cast<std::size_t>(d), kInf);
  for (Eigen::Index k = 0; k < d; ++k) {
    const double p = c.probabilities[static_cast<std::size_t>(k)];
    if (p > eps_supp) {
      if (w[k] <= eps_supp) {
        throw UnsupportedOutcome(
            "outcome " + std::to_string(k) + " has probability " + std::to_string(p) +
                " but the prior diagonal vanishes there",
            static_cast<int>(k));
      }
      scale[k] = std::sqrt(p / w[k]);
      lambdas[static_cast<std::size_t>(k)] = std::log(w[k] / p);  // Z = 1 gauge
    } else {
      scale[k] = 0.0;
    }
  }

  ComplexMatrix rho_b = kernels::scaled_congruence(scale, tau_b);
  // The congruence reproduces the measured distribution on the diagonal; pin
  // it exactly.
  for (Eigen::Index k = 0; k < d; ++k) {
    rho_b(k, k) = c.probabilities[static_cast<std::size_t>(k)];
  }
  const DensityMatrix posterior(c.basis * rho_b * c.basis.adjoint());

  double residual = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double diag =
        std::max(0.0, (c.basis.col(k).adjoint() * posterior.matrix() *
                       c.basis.col(k))(0, 0).real());
    residual = std::max(residual,
                        std::abs(diag - c.probabilities[static_cast<std::size_t>(k)]));
  }
  return {posterior, std::move(lambdas), 1.0,
          quantum_kullback(posterior, tau), residual, 0};
}

namespace {

ComplexMatrix trajectory_derivative(const ComplexMatrix& rho, const ComplexMatrix& a) {
  const double mean = (rho * a).trace().real();
  const ComplexMatrix b = a - mean * ComplexMatrix::Identity(a.rows(), a.cols());
  return -0.5 * (rho * b + b * rho);
}

}  // namespace

DensityMatrix quantum_trajectory(const DensityMatrix& tau, const Observable& obs,
                                 double lambda_target, double step) {
  if (tau.dim() != obs.dim()) {
    throw DimMismatch("quantum_trajectory: dimension mismatch");
  }
  if (!(step > 0.0)) {
    throw DomainError("quantum_trajectory: step must be positive");
  }
  if (lambda_target == 0.0) return tau;

  const int n_steps =
      static_cast<int>(std::ceil(std::abs(lambda_target) / step));
  const double h = lambda_target / n_steps;
  const ComplexMatrix& a = obs.matrix();
  ComplexMatrix rho = tau.matrix();
  for (int s = 0; s < n_steps; ++s) {
    const ComplexMatrix k1 = trajectory_derivative(rho, a);
    const ComplexMatrix k2 = trajectory_derivative(rho + 0.5 * h * k1, a);
    const ComplexMatrix k3 = trajectory_derivative(rho + 0.5 * h * k2, a);
    const ComplexMatrix k4 = trajectory_derivative(rho + h * k3, a);
    rho += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return DensityMatrix(rho);
}

}  // namespace mke
