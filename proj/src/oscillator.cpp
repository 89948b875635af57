#include "mke/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

namespace mke {

FockCutoff::FockCutoff(int d) : dim(d) {
  if (d < 2) {
    throw InvalidState("FockCutoff: dim must be at least 2, got " + std::to_string(d));
  }
}

double poisson_tail(double mu, int d) {
  double term = std::exp(-mu);
  double head = 0.0;
  for (int n = 0; n < d; ++n) {
    head += term;
    term *= mu / (n + 1);
  }
  return std::max(0.0, 1.0 - head);
}

DensityMatrix coherent_density(const CoherentAmplitude& alpha, const FockCutoff& cutoff) {
  const int d = cutoff.dim;
  const double mu = alpha.mean_photons();
  const double tail = poisson_tail(mu, d);
  if (tail > 1e-12) {
    throw CutoffTooSmall("coherent_density: truncation tail " + std::to_string(tail) +
                             " exceeds 1e-12 at cutoff " + std::to_string(d),
                         tail);
  }
  ComplexVector c(d);
  c[0] = std::exp(-0.5 * mu);
  for (int n = 1; n < d; ++n) {
    c[n] = c[n - 1] * alpha.alpha / std::sqrt(static_cast<double>(n));
  }
  ComplexMatrix m = c * c.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

CoherentEstimate coherent_mke_mean(const CoherentAmplitude& alpha, double n_mean) {
  if (std::abs(alpha.alpha) <= 0.0) {
    throw InvalidState("coherent_mke_mean: prior amplitude must be nonzero");
  }
  if (!(n_mean > 0.0)) {
    throw InvalidMean("coherent_mke_mean: mean photon number " +
                      std::to_string(n_mean) + " must be positive");
  }
  CoherentEstimate out;
  out.beta = std::sqrt(n_mean) * std::exp(Complex(0.0, alpha.phase()));
  out.lambda = std::log(alpha.mean_photons() / n_mean);
  out.partition = std::exp(n_mean);
  return out;
}

EstimationResult fock_mke_mean(const CoherentAmplitude& alpha, double n_mean,
                               const FockCutoff& cutoff, double tol) {
  const DensityMatrix prior = coherent_density(alpha, cutoff);
  ComplexMatrix number = ComplexMatrix::Zero(cutoff.dim, cutoff.dim);
  for (int n = 0; n < cutoff.dim; ++n) number(n, n) = static_cast<double>(n);
  return mke_single_mean(prior, {Observable(std::move(number)), n_mean}, tol);
}

DensityMatrix reconstruct_from_photon_distribution(double phi,
                                                   const PhotonDistribution& p) {
  const ClassicalDistribution full = p.as_distribution();
  const auto d = static_cast<Eigen::Index>(full.size());
  ComplexVector psi(d);
  for (Eigen::Index n = 0; n < d; ++n) {
    psi[n] = std::sqrt(full[static_cast<std::size_t>(n)]) *
             std::exp(Complex(0.0, phi * static_cast<double>(n)));
  }
  return DensityMatrix(ComplexMatrix(psi * psi.adjoint()));
}

namespace {

// Per-pair scalar equation f(x) = -x^2 + s ln x - rhs on (0, x_max], unimodal
// with maximum at x = sqrt(s/2). A peak value in [-peak_allowance, 0) is
// treated as a tangent root at the peak (data overshoot within noise);
// anything lower is inconsistent.
constexpr double kPeakAllowance = 0.5;

struct PairRoots {
  int n, m;
  double roots[2];
  int count = 0;
};

double bisect(double lo, double hi, bool rising, double s, double rhs) {
  auto f = [&](double x) { return -x * x + s * std::log(x) - rhs; };
  for (int i = 0; i < 120; ++i) {
    const double mid = 0.5 * (lo + hi);
    if ((f(mid) < 0.0) == rising) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PairRoots pair_roots(int n, int m, double pn, double pm, double x_max) {
  PairRoots out{n, m, {0.0, 0.0}, 0};
  const double s = static_cast<double>(n + m);
  const double rhs = 0.5 * (std::lgamma(n + 1.0) + std::lgamma(m + 1.0) +
                            std::log(pn) + std::log(pm));
  auto f = [&](double x) { return -x * x + s * std::log(x) - rhs; };
  if (n + m == 0) {
    // Monotone decreasing; root at x = sqrt(-rhs) when rhs < 0.
    if (rhs < 0.0) out.roots[out.count++] = std::sqrt(-rhs);
    return out;
  }
  const double peak = std::sqrt(0.5 * s);
  const double f_peak = f(peak);
  if (f_peak < 1e-12) {
    // Tangent or near-tangent data: the two roots coalesce at the peak and
    // the crossing points are ill-conditioned; report the peak itself.
    if (f_peak >= -kPeakAllowance) out.roots[out.count++] = peak;
    return out;
  }
  const double lo = 1e-12;
  if (f(lo) < 0.0) {
    out.roots[out.count++] = bisect(lo, peak, true, s, rhs);
  }
  if (peak < x_max && f(x_max) < 0.0) {
    out.roots[out.count++] = bisect(peak, x_max, false, s, rhs);
  }
  return out;
}

DisplacementEstimate solve_displacement(double alpha, const PhotonDistribution& p,
                                        const FockCutoff& cutoff, bool diagonal_only) {
  if (!(alpha > 0.0)) {
    throw InvalidState("displacement estimation: alpha must be real positive");
  }
  if (static_cast<int>(p.size()) != cutoff.dim) {
    throw DimMismatch("displacement estimation: distribution length " +
                      std::to_string(p.size()) + " does not match cutoff " +
                      std::to_string(cutoff.dim));
  }
  std::vector<int> kept;
  for (std::size_t n = 0; n < p.size(); ++n) {
    if (p[n] > eps_supp) kept.push_back(static_cast<int>(n));
  }
  if (kept.empty()) {
    throw InsufficientData("displacement estimation: no outcome above the support threshold");
  }

  std::vector<std::pair<int, int>> pairs;
  if (diagonal_only) {
    for (int n : kept) pairs.emplace_back(n, n);
  } else {
    for (int n : kept) {
      for (int m : kept) pairs.emplace_back(n, m);
    }
  }

  const double x_max = std::sqrt(2.0 * cutoff.dim);
  std::vector<PairRoots> found(pairs.size());
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [n, m] = pairs[i];
    found[i] = pair_roots(n, m, p[static_cast<std::size_t>(n)],
                          p[static_cast<std::size_t>(m)], x_max);
  }

  for (const PairRoots& pr : found) {
    if (pr.count == 0) {
      throw NoRoot("pair (" + std::to_string(pr.n) + "," + std::to_string(pr.m) +
                       ") has no positive solution consistent with the data",
                   pr.n, pr.m);
    }
  }

  // Anchor the two-root pairs on the unambiguous ones: single-root pairs fix
  // a reference by median; without any, fall back to the weak-process guess
  // x = alpha.
  std::vector<double> single;
  for (const PairRoots& pr : found) {
    if (pr.count == 1) single.push_back(pr.roots[0]);
  }
  double x_ref = alpha;
  if (!single.empty()) {
    std::sort(single.begin(), single.end());
    const std::size_t h = single.size() / 2;
    x_ref = (single.size() % 2 == 1) ? single[h]
                                     : 0.5 * (single[h - 1] + single[h]);
  }

  DisplacementEstimate out;
  out.determinations.reserve(found.size());
  std::vector<double> betas;
  betas.reserve(found.size());
  for (const PairRoots& pr : found) {
    double x = pr.roots[0];
    if (pr.count == 2 &&
        std::abs(pr.roots[1] - x_ref) < std::abs(pr.roots[0] - x_ref)) {
      x = pr.roots[1];
    }
    out.determinations.push_back({pr.n, pr.m, x - alpha});
    betas.push_back(x - alpha);
  }
  std::vector<double> sorted = betas;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t h = sorted.size() / 2;
  out.beta = (sorted.size() % 2 == 1) ? sorted[h] : 0.5 * (sorted[h - 1] + sorted[h]);
  out.spread = sorted.back() - sorted.front();
  return out;
}

}  // namespace

DisplacementEstimate estimate_displacement_mke(double alpha,
                                               const PhotonDistribution& p,
                                               const FockCutoff& cutoff) {
  return solve_displacement(alpha, p, cutoff, false);
}

DisplacementEstimate estimate_displacement_direct(double alpha,
                                                  const PhotonDistribution& p,
                                                  const FockCutoff& cutoff) {
  return solve_displacement(alpha, p, cutoff, true);
}

HermitianOperator estimate_weak_hamiltonian_fock(const DensityMatrix& tau,
                                                 const PhotonDistribution& p,
                                                 double t, const FockCutoff& cutoff) {
  const Eigen::Index d = tau.dim();
  if (static_cast<int>(p.size()) != cutoff.dim || d != cutoff.dim) {
    throw DimMismatch("estimate_weak_hamiltonian_fock: dimension mismatch");
  }
  if (!(t > 0.0)) {
    throw DomainError("estimate_weak_hamiltonian_fock: t must be positive");
  }
  p.as_distribution();  // the hierarchy needs the complete distribution

  RealVector taud(d);
  for (Eigen::Index n = 0; n < d; ++n) {
    taud[n] = std::max(0.0, tau(n, n).real());
    if (taud[n] <= eps_supp && p[static_cast<std::size_t>(n)] > eps_supp) {
      throw NoSupport("outcome " + std::to_string(n) +
                      " has probability but the prior diagonal vanishes there");
    }
  }

  const SpectralDecomposition sd = eigh(tau.as_operator());
  const double gap_cut = 1e-10 * sd.eigenvalues.maxCoeff();
  // Cluster eigenvalues by adjacent gaps; any multi-member cluster makes the
  // corresponding H components unobservable.
  std::vector<std::vector<int>> clusters{{0}};
  for (Eigen::Index a = 1; a < d; ++a) {
    if (sd.eigenvalues[a] - sd.eigenvalues[a - 1] <= gap_cut) {
      clusters.back().push_back(static_cast<int>(a));
    } else {
      clusters.push_back({static_cast<int>(a)});
    }
  }
  std::string degenerate;
  for (const auto& cl : clusters) {
    if (cl.size() > 1) {
      degenerate += " {";
      for (std::size_t i = 0; i < cl.size(); ++i) {
        degenerate += (i ? "," : "") + std::to_string(cl[i]);
      }
      degenerate += " ~ " + std::to_string(sd.eigenvalues[cl.front()]) + "}";
    }
  }
  if (!degenerate.empty()) {
    throw DegeneratePrior(
        "prior eigenvalue clusters make H components unobservable:" + degenerate);
  }

  ComplexMatrix c = ComplexMatrix::Zero(d, d);
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      const double pn = p[static_cast<std::size_t>(n)];
      const double pm = p[static_cast<std::size_t>(m)];
      if (pn <= eps_supp || pm <= eps_supp) continue;  // no equation
      c(m, n) = Complex(0.0, 1.0 / t) * tau(m, n) *
                (1.0 - std::sqrt(pn * pm / (taud[n] * taud[m])));
    }
  }

  const ComplexMatrix c_eig = sd.eigenvectors.adjoint() * c * sd.eigenvectors;
  ComplexMatrix h_eig = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = 0; b < d; ++b) {
      const double gap = sd.eigenvalues[a] - sd.eigenvalues[b];
      if (std::abs(gap) > gap_cut) {
        h_eig(a, b) = c_eig(a, b) / gap;
      }
    }
  }
  ComplexMatrix h = sd.eigenvectors * h_eig * sd.eigenvectors.adjoint();
  return HermitianOperator(0.5 * (h + h.adjoint().eval()));
}

}  // namespace mke
