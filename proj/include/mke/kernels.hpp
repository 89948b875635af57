#pragma once

#include <cstdint>
#include <vector>

#include "mke/linalg.hpp"

namespace mke::kernels {

// Data-parallel inner loops used by the estimators. Each OpenMP variant
// assigns every output slot to exactly one thread and performs the same
// per-slot arithmetic as its serial reference, so results are bit-identical
// for any thread count. The *_serial functions are the reference
// implementations kept for testing and benchmarking.

/// out(m,n) = w(m) * w(n) * a(m,n). This is the congruence structure of the
/// Gibbs-weighted posterior matrix elements.
ComplexMatrix scaled_congruence(const RealVector& w, const ComplexMatrix& a);
ComplexMatrix scaled_congruence_serial(const RealVector& w, const ComplexMatrix& a);

/// Stateless counter-based uniform in [0,1): value i of stream `seed`.
double unit_double(std::uint64_t seed, std::uint64_t counter);

/// Multinomial counts for `shots` draws from cumulative distribution `cdf`
/// (ascending, back() == total mass). Draw i uses unit_double(seed, i), so
/// the counts depend only on (cdf, shots, seed).
std::vector<std::int64_t> multinomial_counts(const std::vector<double>& cdf,
                                             std::int64_t shots,
                                             std::uint64_t seed);
std::vector<std::int64_t> multinomial_counts_serial(const std::vector<double>& cdf,
                                                    std::int64_t shots,
                                                    std::uint64_t seed);

}  // namespace mke::kernels
