#include "mke/qubit.hpp"

#include <cmath>
#include <string>

namespace mke {

namespace {

std::array<double, 3> cross(const std::array<double, 3>& a,
                            const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
          a[0] * b[1] - a[1] * b[0]};
}

double norm3(const std::array<double, 3>& a) {
  return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
}

}  // namespace

double BlochVector::norm() const { return norm3(v); }

double BlochVector::dot(const std::array<double, 3>& other) const {
  return v[0] * other[0] + v[1] * other[1] + v[2] * other[2];
}

SpinDirection::SpinDirection(std::array<double, 3> n) : n_(n) {
  const double len = norm3(n_);
  if (std::abs(len - 1.0) > 1e-10) {
    throw InvalidState("SpinDirection: |n| = " + std::to_string(len) +
                       " is not 1 within 1e-10");
  }
}

DensityMatrix bloch_to_density(const BlochVector& b) {
  if (b.norm() > 1.0 + 1e-10) {
    throw InvalidState("bloch_to_density: |v| = " + std::to_string(b.norm()) +
                       " exceeds 1");
  }
  ComplexMatrix m(2, 2);
  m(0, 0) = Complex(0.5 * (1.0 + b.v[2]), 0.0);
  m(1, 1) = Complex(0.5 * (1.0 - b.v[2]), 0.0);
  m(0, 1) = Complex(0.5 * b.v[0], -0.5 * b.v[1]);
  m(1, 0) = Complex(0.5 * b.v[0], 0.5 * b.v[1]);
  return DensityMatrix(m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw DimMismatch("density_to_bloch: expected a qubit state, got dim " +
                      std::to_string(rho.dim()));
  }
  const ComplexMatrix& m = rho.matrix();
  return BlochVector{{2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(),
                      (m(0, 0) - m(1, 1)).real()}};
}

double qubit_lambda(const BlochVector& tau, const SpinDirection& n, double mean) {
  const double c = tau.dot(n.n());
  if (mean == c) return 0.0;
  if (std::abs(mean) >= 1.0) {
    throw InfeasibleMean("qubit mean " + std::to_string(mean) +
                         " outside the open interval (-1, 1)");
  }
  const double arg = (c - mean) / (1.0 - mean * c);
  if (std::abs(arg) >= 1.0) {
    throw InfeasibleMean("qubit multiplier argument " + std::to_string(arg) +
                         " outside the arctanh domain");
  }
  return std::atanh(arg);
}

BlochVector qubit_mke_mean(const BlochVector& tau, const SpinDirection& n,
                           double mean) {
  const double lambda = qubit_lambda(tau, n, mean);
  if (lambda == 0.0) return tau;
  const double c = tau.dot(n.n());
  const double sh = std::sinh(lambda);
  const double ch = std::cosh(lambda);
  const double z = ch - c * sh;                  // partition function
  const double pull = 2.0 * std::pow(std::sinh(0.5 * lambda), 2) * c - sh;
  BlochVector out;
  for (int i = 0; i < 3; ++i) {
    out.v[i] = (tau.v[i] + pull * n.n()[i]) / z;
  }
  return out;
}

QubitHamiltonianEstimate qubit_weak_hamiltonian_single(const BlochVector& tau,
                                                       const SpinDirection& n,
                                                       double mean) {
  const double tau_norm = tau.norm();
  if (tau_norm <= 1e-12) {
    throw NoInformation("prior Bloch vector vanishes");
  }
  const std::array<double, 3> axis = cross(tau.v, n.n());
  const double axis_norm = norm3(axis);
  if (axis_norm <= 1e-12) {
    throw NoInformation("prior Bloch vector is parallel to the measurement direction");
  }
  const double c = tau.dot(n.n());
  double kappa = 0.0;
  if (mean != c) {
    if (std::abs(mean) >= 1.0) {
      throw InfeasibleMean("qubit mean " + std::to_string(mean) +
                           " outside the open interval (-1, 1)");
    }
    kappa = (c - mean) / (1.0 - mean * c);
    if (std::abs(kappa) >= 1.0) {
      throw InfeasibleMean("kappa " + std::to_string(kappa) +
                           " outside the arctanh domain");
    }
  }
  const double coef = ((1.0 - std::sqrt(1.0 - kappa * kappa)) * c - kappa) /
                      (1.0 - c * kappa) / (2.0 * tau_norm * tau_norm);
  QubitHamiltonianEstimate out;
  for (int i = 0; i < 3; ++i) {
    out.h_eff[i] = coef * axis[i];
    out.direction[i] = axis[i] / axis_norm;
  }
  return out;
}

std::array<double, 3> qubit_weak_hamiltonian_multi(
    const BlochVector& tau,
    const std::vector<std::pair<SpinDirection, double>>& data, double t) {
  if (tau.norm() <= 1e-12) {
    throw NoInformation("prior Bloch vector vanishes");
  }
  if (!(t > 0.0)) {
    throw DomainError("qubit_weak_hamiltonian_multi: t must be positive");
  }
  const auto rows = static_cast<Eigen::Index>(data.size());
  Eigen::MatrixXd sys(rows, 3);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto& [dir, mean] = data[static_cast<std::size_t>(i)];
    const std::array<double, 3> axis = cross(tau.v, dir.n());
    sys(i, 0) = 2.0 * axis[0];
    sys(i, 1) = 2.0 * axis[1];
    sys(i, 2) = 2.0 * axis[2];
    rhs[i] = mean - tau.dot(dir.n());
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sys, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  if (svd.rank() < 2) {
    throw RankDeficient("stacked system has rank " + std::to_string(svd.rank()) +
                        "; at least 2 independent directions are required");
  }
  // Rows are orthogonal to tau, so the minimum-norm solution carries no tau
  // component; project it out anyway to pin the invariant exactly.
  Eigen::Vector3d h = svd.solve(rhs) / t;
  Eigen::Vector3d taudir(tau.v[0], tau.v[1], tau.v[2]);
  taudir.normalize();
  h -= taudir * taudir.dot(h);
  return {h[0], h[1], h[2]};
}

}  // namespace mke
