#pragma once

#include <cstdint>
#include <vector>

#include "mke/distribution.hpp"
#include "mke/linalg.hpp"
#include "mke/state.hpp"

namespace mke {

/// Finite-shot measurement record.
struct ShotSample {
  std::vector<std::int64_t> counts;
  std::int64_t shots;
  std::uint64_t seed;

  ClassicalDistribution frequencies() const;
};

/// Tr[rho A]. The imaginary part must be negligible (both inputs Hermitian).
double exact_mean(const DensityMatrix& rho, const Observable& obs);

/// p_k = <phi_k|rho|phi_k> for a complete orthonormal basis (columns).
ClassicalDistribution exact_distribution(const DensityMatrix& rho,
                                         const ComplexMatrix& basis);

/// Multinomial draw from a deterministic counter-based generator; identical
/// (p, shots, seed) give identical counts, for any thread count.
ShotSample sample_outcomes(const ClassicalDistribution& p, std::int64_t shots,
                           std::uint64_t seed);

/// rho_t = e^{-iHt} tau e^{iHt} via the spectral decomposition of H.
DensityMatrix evolve_unitary(const DensityMatrix& tau, const HermitianOperator& h,
                             double t);

/// tau + i t [tau, H]: the first-order expansion of evolve_unitary. Hermitian
/// but not necessarily positive; returned as a plain matrix.
ComplexMatrix first_order_state(const DensityMatrix& tau, const HermitianOperator& h,
                                double t);

}  // namespace mke
