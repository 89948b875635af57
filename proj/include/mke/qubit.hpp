#pragma once

#include <array>
#include <vector>

#include "mke/state.hpp"

namespace mke {

/// Bloch parametrization of a qubit state, |v| <= 1.
struct BlochVector {
  std::array<double, 3> v{0.0, 0.0, 0.0};

  double norm() const;
  double dot(const std::array<double, 3>& other) const;
};

/// Unit vector giving the measured spin direction.
struct SpinDirection {
  explicit SpinDirection(std::array<double, 3> n);
  const std::array<double, 3>& n() const { return n_; }

private:
  std::array<double, 3> n_;
};

/// Weak-Hamiltonian estimate from a single direction. h_eff is the effective
/// product (Hamiltonian Bloch vector) x (evolution time); it lies along
/// tau x n by construction.
struct QubitHamiltonianEstimate {
  std::array<double, 3> h_eff;
  std::array<double, 3> direction;  // unit vector along tau x n
};

DensityMatrix bloch_to_density(const BlochVector& v);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// lambda = arctanh[(tau.n - mean) / (1 - mean (tau.n))]; zero when the mean
/// equals the prior projection.
double qubit_lambda(const BlochVector& tau, const SpinDirection& n, double mean);

/// Closed-form posterior Bloch vector: the component along n equals the
/// measured mean, the orthogonal components shrink by the common factor
/// sqrt[(1 - mean^2)/(1 - (tau.n)^2)].
BlochVector qubit_mke_mean(const BlochVector& tau, const SpinDirection& n,
                           double mean);

/// Weak-Hamiltonian estimate (times t) from one spin mean on the evolved
/// state; the result is orthogonal to both the prior and the measurement
/// direction.
QubitHamiltonianEstimate qubit_weak_hamiltonian_single(const BlochVector& tau,
                                                       const SpinDirection& n,
                                                       double mean);

/// Least-squares solve of mean_i - tau.n_i = 2 h.(tau x n_i) over several
/// directions; the unobservable component along tau is set to zero
/// (minimum-norm). Returns h t, or h when the evolution time is supplied.
std::array<double, 3> qubit_weak_hamiltonian_multi(
    const BlochVector& tau,
    const std::vector<std::pair<SpinDirection, double>>& data, double t = 1.0);

}  // namespace mke
