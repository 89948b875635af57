#include <doctest.h>

#include <cmath>
#include <limits>

#include "mke/classical.hpp"
#include "mke/entropy.hpp"
#include "mke/qubit.hpp"
#include "testers.hpp"

using namespace mke;

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy(ClassicalDistribution({1.0, 0.0})) == 0.0);
  CHECK(shannon_entropy(ClassicalDistribution({0.25, 0.25, 0.25, 0.25})) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-15));
  const double expected = -0.25 * std::log(0.25) - 0.75 * std::log(0.75);
  CHECK(shannon_entropy(ClassicalDistribution({0.25, 0.75})) ==
        doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("kl_divergence") {
  const ClassicalDistribution p({0.25, 0.75});
  CHECK(kl_divergence(p, p) == 0.0);
  // against the uniform prior the divergence is ln N - H(p)
  const ClassicalDistribution u({0.5, 0.5});
  CHECK(kl_divergence(p, u) ==
        doctest::Approx(std::log(2.0) - shannon_entropy(p)).epsilon(1e-14));
  CHECK(kl_divergence(ClassicalDistribution({1.0, 0.0}),
                      ClassicalDistribution({0.0, 1.0})) ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(kl_divergence(p, ClassicalDistribution({1.0})), DimMismatch);
}

TEST_CASE("von_neumann_entropy") {
  CHECK(von_neumann_entropy(bloch_to_density({{0.0, 0.0, 1.0}})) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(bloch_to_density({{0.0, 0.0, 0.0}})) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-14));
  // 2x2 eigenvalue oracle: (1 +- |v|)/2
  const double hi = 0.8, lo = 0.2;
  const double expected = -hi * std::log(hi) - lo * std::log(lo);
  CHECK(von_neumann_entropy(bloch_to_density({{0.0, 0.0, 0.6}})) ==
        doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("quantum_kullback basics") {
  std::mt19937_64 rng(21);
  const DensityMatrix rho = testers::rand_density(3, rng);
  CHECK(quantum_kullback(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(quantum_kullback(bloch_to_density({{0.0, 0.0, 1.0}}),
                         bloch_to_density({{0.0, 0.0, -1.0}})) ==
        std::numeric_limits<double>::infinity());

  // commuting diagonal pair reduces to the classical divergence
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 0) = 0.3;
  a(1, 1) = 0.7;
  ComplexMatrix b = ComplexMatrix::Zero(2, 2);
  b(0, 0) = 0.5;
  b(1, 1) = 0.5;
  CHECK(quantum_kullback(DensityMatrix(a), DensityMatrix(b)) ==
        doctest::Approx(kl_divergence(ClassicalDistribution({0.3, 0.7}),
                                      ClassicalDistribution({0.5, 0.5})))
            .epsilon(1e-12));
}

TEST_CASE("quantum_kullback equals classical divergence for commuting pairs") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rep % 4);
    const ComplexMatrix u = testers::rand_unitary(d, rng);
    const auto pv = testers::rand_distribution(static_cast<std::size_t>(d), rng);
    const auto qv = testers::rand_distribution(static_cast<std::size_t>(d), rng);
    ComplexMatrix dp = ComplexMatrix::Zero(d, d), dq = ComplexMatrix::Zero(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
      dp(k, k) = pv[static_cast<std::size_t>(k)];
      dq(k, k) = qv[static_cast<std::size_t>(k)];
    }
    const DensityMatrix rho(ComplexMatrix(u * dp * u.adjoint()));
    const DensityMatrix tau(ComplexMatrix(u * dq * u.adjoint()));
    CHECK(std::abs(quantum_kullback(rho, tau) -
                   kl_divergence(ClassicalDistribution(pv),
                                 ClassicalDistribution(qv))) <= 1e-10);
  }
}

TEST_CASE("thermal-prior reduction: K(rho|tau) = H(tau) - H(rho) at equal mean") {
  // tau geometric-thermal on the Fock diagonal, rho any diagonal state with
  // the same mean occupation.
  const int d = 12;
  std::vector<double> tdiag(d);
  const double q = 0.6;
  double sum = 0.0, mean = 0.0;
  for (int n = 0; n < d; ++n) sum += std::pow(q, n);
  for (int n = 0; n < d; ++n) {
    tdiag[static_cast<std::size_t>(n)] = std::pow(q, n) / sum;
    mean += n * tdiag[static_cast<std::size_t>(n)];
  }
  std::mt19937_64 rng(23);
  std::vector<double> values(d);
  for (int n = 0; n < d; ++n) values[static_cast<std::size_t>(n)] = n;
  for (int rep = 0; rep < 5; ++rep) {
    const auto prior = testers::rand_distribution(static_cast<std::size_t>(d), rng);
    const auto est = classical_mke_estimate(ClassicalDistribution(prior),
                                            {values}, mean, 1e-12);
    ComplexMatrix tm = ComplexMatrix::Zero(d, d), rm = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) {
      tm(n, n) = tdiag[static_cast<std::size_t>(n)];
      rm(n, n) = est.posterior[static_cast<std::size_t>(n)];
    }
    const DensityMatrix tau(tm), rho(rm);
    CHECK(std::abs(quantum_kullback(rho, tau) -
                   (von_neumann_entropy(tau) - von_neumann_entropy(rho))) <= 1e-9);
  }
}

TEST_CASE("quantum_kullback is nonnegative on randomized pairs") {
  std::mt19937_64 rng(24);
  for (int rep = 0; rep < 30; ++rep) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rep % 5);
    const DensityMatrix rho = testers::rand_density(d, rng);
    const DensityMatrix tau = testers::rand_density(d, rng);
    CHECK(quantum_kullback(rho, tau) >= -1e-12);
  }
}
