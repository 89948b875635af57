#include "mke/entropy.hpp"

#include <cmath>
#include <limits>

namespace mke {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double shannon_entropy(const ClassicalDistribution& p) {
  double h = 0.0;
  for (double v : p.values()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double kl_divergence(const ClassicalDistribution& p, const ClassicalDistribution& q) {
  if (p.size() != q.size()) {
    throw DimMismatch("kl_divergence: length mismatch");
  }
  double k = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    k += p[i] * std::log(p[i] / q[i]);
  }
  return k;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const SpectralDecomposition sd = eigh(rho.as_operator());
  const double cut = eps_supp * sd.eigenvalues.maxCoeff();
  double h = 0.0;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    const double r = sd.eigenvalues[k];
    if (r > cut) h -= r * std::log(r);
  }
  return h;
}

double quantum_kullback(const DensityMatrix& rho, const DensityMatrix& tau) {
  if (rho.dim() != tau.dim()) {
    throw DimMismatch("quantum_kullback: dimension mismatch");
  }
  const SpectralDecomposition sr = eigh(rho.as_operator());
  const SpectralDecomposition st = eigh(tau.as_operator());
  const double cut_r = eps_supp * sr.eigenvalues.maxCoeff();
  const double cut_t = eps_supp * st.eigenvalues.maxCoeff();

  double tr_rho_log_rho = 0.0;
  for (Eigen::Index k = 0; k < sr.eigenvalues.size(); ++k) {
    const double r = sr.eigenvalues[k];
    if (r > cut_r) tr_rho_log_rho += r * std::log(r);
  }

  // Tr[rho ln tau] = sum_j w_j ln t_j with w_j = <t_j|rho|t_j>. Weight on an
  // excluded eigenvector of tau means the support escapes: K = +inf.
  double tr_rho_log_tau = 0.0;
  for (Eigen::Index j = 0; j < st.eigenvalues.size(); ++j) {
    const double w =
        std::max(0.0, (st.eigenvectors.col(j).adjoint() * rho.matrix() *
                       st.eigenvectors.col(j))(0, 0).real());
    const double t = st.eigenvalues[j];
    if (t > cut_t) {
      tr_rho_log_tau += w * std::log(t);
    } else if (w > eps_supp) {
      return kInf;
    }
  }
  return tr_rho_log_rho - tr_rho_log_tau;
}

}  // namespace mke
