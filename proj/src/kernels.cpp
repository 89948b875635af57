#include "mke/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mke::kernels {

ComplexMatrix scaled_congruence_serial(const RealVector& w, const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  ComplexMatrix out(d, d);
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      out(m, n) = w[m] * w[n] * a(m, n);
    }
  }
  return out;
}

ComplexMatrix scaled_congruence(const RealVector& w, const ComplexMatrix& a) {
  const Eigen::Index d = a.rows();
  ComplexMatrix out(d, d);
#pragma omp parallel for schedule(static)
  for (Eigen::Index m = 0; m < d; ++m) {
    for (Eigen::Index n = 0; n < d; ++n) {
      out(m, n) = w[m] * w[n] * a(m, n);
    }
  }
  return out;
}

double unit_double(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  z ^= z >> 31;
  return static_cast<double>(z >> 11) * 0x1.0p-53;
}

namespace {

inline std::size_t pick_outcome(const std::vector<double>& cdf, double u) {
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  if (it == cdf.end()) --it;
  return static_cast<std::size_t>(it - cdf.begin());
}

}  // namespace

std::vector<std::int64_t> multinomial_counts_serial(const std::vector<double>& cdf,
                                                    std::int64_t shots,
                                                    std::uint64_t seed) {
  std::vector<std::int64_t> counts(cdf.size(), 0);
  for (std::int64_t i = 0; i < shots; ++i) {
    ++counts[pick_outcome(cdf, unit_double(seed, static_cast<std::uint64_t>(i)))];
  }
  return counts;
}

std::vector<std::int64_t> multinomial_counts(const std::vector<double>& cdf,
                                             std::int64_t shots,
                                             std::uint64_t seed) {
  std::vector<std::int64_t> counts(cdf.size(), 0);
#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::int64_t> local(cdf.size(), 0);
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < shots; ++i) {
      ++local[pick_outcome(cdf, unit_double(seed, static_cast<std::uint64_t>(i)))];
    }
#pragma omp critical
    for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += local[k];
  }
#else
  counts = multinomial_counts_serial(cdf, shots, seed);
#endif
  return counts;
}

}  // namespace mke::kernels
