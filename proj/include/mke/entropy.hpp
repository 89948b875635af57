#pragma once

#include "mke/distribution.hpp"
#include "mke/state.hpp"

namespace mke {

// Entropies use the natural logarithm throughout. Divergences return
// +infinity (std::numeric_limits<double>::infinity()) when the posterior's
// support escapes the prior's; that is a valid value, not an error.

/// H(p) = -sum_k p_k ln p_k, with 0 ln 0 := 0.
double shannon_entropy(const ClassicalDistribution& p);

/// K(p|q) = sum_k p_k ln(p_k/q_k); terms with p_k = 0 contribute nothing.
/// +infinity when some p_k > 0 has q_k = 0.
double kl_divergence(const ClassicalDistribution& p, const ClassicalDistribution& q);

/// H(rho) = -sum r_k ln r_k over eigenvalues above the support threshold.
double von_neumann_entropy(const DensityMatrix& rho);

/// K(rho|tau) = Tr[rho (ln rho - ln tau)] via spectral decompositions.
/// +infinity when rho's support is not contained in tau's.
double quantum_kullback(const DensityMatrix& rho, const DensityMatrix& tau);

}  // namespace mke
