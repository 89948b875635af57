#pragma once

#include <complex>
#include <vector>

#include "mke/distribution.hpp"
#include "mke/estimate.hpp"
#include "mke/state.hpp"

namespace mke {

/// Complex amplitude of a coherent state |alpha>.
struct CoherentAmplitude {
  Complex alpha;

  double phase() const { return std::arg(alpha); }
  double mean_photons() const { return std::norm(alpha); }
};

/// Fock-space truncation |0>..|D-1>.
struct FockCutoff {
  explicit FockCutoff(int d);
  int dim;
};

/// Poisson tail mass sum_{n>=D} e^{-mu} mu^n / n!.
double poisson_tail(double mu, int d);

/// Truncated coherent state |alpha><alpha|, renormalized after truncation.
/// Throws CutoffTooSmall when the truncation tail exceeds 1e-12.
DensityMatrix coherent_density(const CoherentAmplitude& alpha, const FockCutoff& cutoff);

struct CoherentEstimate {
  Complex beta;    // posterior amplitude sqrt(N) e^{i arg alpha}
  double lambda;   // ln(|alpha|^2 / N)
  double partition;  // e^N
};

/// Closed-form mKE posterior for a coherent prior under a mean-photon-number
/// constraint: still a coherent state, with the prior's phase.
CoherentEstimate coherent_mke_mean(const CoherentAmplitude& alpha, double n_mean);

/// Numerical cross-check of the closed form: delegates to mke_single_mean
/// with the truncated number operator.
EstimationResult fock_mke_mean(const CoherentAmplitude& alpha, double n_mean,
                               const FockCutoff& cutoff, double tol = 1e-9);

/// rho_nm = sqrt(p_n p_m) e^{i phi (n-m)}: the pure state reconstructed from
/// a measured photon distribution with a coherent prior of phase phi. Only
/// the prior's phase enters.
DensityMatrix reconstruct_from_photon_distribution(double phi,
                                                   const PhotonDistribution& p);

struct Determination {
  int n;
  int m;          // m == n for the direct (diagonal-only) method
  double beta_nm;
};

struct DisplacementEstimate {
  double beta;    // median of the per-pair determinations
  std::vector<Determination> determinations;
  double spread;  // max - min over determinations
};

/// Displacement amplitude from the photon distribution of a displaced
/// coherent state, via the full set of (n, m) pair equations
///   -x^2 + (n+m) ln x = ln sqrt(n! m! p_n p_m),   x = alpha + beta.
/// Outcomes with p_n below the support threshold are dropped; the retained
/// D' outcomes give D'^2 determinations.
DisplacementEstimate estimate_displacement_mke(double alpha,
                                               const PhotonDistribution& p,
                                               const FockCutoff& cutoff);

/// Baseline that inverts only the diagonal relations
///   -x^2 + 2n ln x = ln(n! p_n),
/// giving D' determinations.
DisplacementEstimate estimate_displacement_direct(double alpha,
                                                  const PhotonDistribution& p,
                                                  const FockCutoff& cutoff);

/// First-order weak-Hamiltonian solve from the photon distribution of the
/// evolved state: builds C_mn = (i/t) tau_mn (1 - sqrt(p_n p_m/(tau_nn tau_mm)))
/// and solves the commutator equation tau H - H tau = C in tau's eigenbasis.
/// Components between eigenvalues closer than the gap threshold are
/// unobservable; a prior with such degeneracies raises DegeneratePrior.
HermitianOperator estimate_weak_hamiltonian_fock(const DensityMatrix& tau,
                                                 const PhotonDistribution& p,
                                                 double t, const FockCutoff& cutoff);

}  // namespace mke
