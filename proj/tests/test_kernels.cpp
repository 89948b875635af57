#include <doctest.h>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mke/kernels.hpp"
#include "testers.hpp"

using namespace mke;

TEST_CASE("scaled_congruence matches its serial reference bit for bit") {
  std::mt19937_64 rng(91);
  for (Eigen::Index d : {3, 17, 64}) {
    const ComplexMatrix a = testers::rand_hermitian(d, rng);
    RealVector w(d);
    std::uniform_real_distribution<double> uni(0.1, 2.0);
    for (Eigen::Index k = 0; k < d; ++k) w[k] = uni(rng);
    const ComplexMatrix par = kernels::scaled_congruence(w, a);
    const ComplexMatrix ser = kernels::scaled_congruence_serial(w, a);
    CHECK((par - ser).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("multinomial_counts matches its serial reference for any thread count") {
  std::vector<double> cdf{0.1, 0.35, 0.9, 1.0};
  const auto ser = kernels::multinomial_counts_serial(cdf, 20000, 4242);
  const auto par = kernels::multinomial_counts(cdf, 20000, 4242);
  CHECK(ser == par);
#ifdef _OPENMP
  const int saved = omp_get_max_threads();
  for (int threads : {1, 2, 7}) {
    omp_set_num_threads(threads);
    CHECK(kernels::multinomial_counts(cdf, 20000, 4242) == ser);
  }
  omp_set_num_threads(saved);
#endif
  std::int64_t total = 0;
  for (auto c : ser) total += c;
  CHECK(total == 20000);
}

TEST_CASE("unit_double is a pure function of seed and counter") {
  CHECK(kernels::unit_double(1, 0) == kernels::unit_double(1, 0));
  CHECK(kernels::unit_double(1, 0) != kernels::unit_double(1, 1));
  CHECK(kernels::unit_double(1, 0) != kernels::unit_double(2, 0));
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const double u = kernels::unit_double(99, i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
