#include <doctest.h>

#include <cmath>

#include "mke/classical.hpp"
#include "mke/entropy.hpp"
#include "mke/oscillator.hpp"
#include "mke/simulate.hpp"
#include "testers.hpp"

using namespace mke;

namespace {

std::vector<double> poisson_window(double mu, int d) {
  std::vector<double> p(static_cast<std::size_t>(d));
  p[0] = std::exp(-mu);
  for (int n = 1; n < d; ++n) {
    p[static_cast<std::size_t>(n)] = p[static_cast<std::size_t>(n - 1)] * mu / n;
  }
  return p;
}

}  // namespace

TEST_CASE("coherent_density") {
  SUBCASE("vacuum for alpha = 0") {
    const DensityMatrix vac = coherent_density({0.0}, FockCutoff(4));
    CHECK(vac(0, 0).real() == doctest::Approx(1.0));
    CHECK(std::abs(vac(1, 1)) <= 1e-15);
  }
  SUBCASE("ground matrix element e^{-1} at alpha = 1") {
    const DensityMatrix c = coherent_density({1.0}, FockCutoff(25));
    CHECK(std::abs(c(0, 0).real() - std::exp(-1.0)) <= 1e-12);
  }
  SUBCASE("matrix elements follow the closed form") {
    const Complex alpha(0.7, 0.4);
    const DensityMatrix c = coherent_density({alpha}, FockCutoff(25));
    const double mu = std::norm(alpha);
    for (int n = 0; n < 4; ++n) {
      for (int m = 0; m < 4; ++m) {
        const Complex expect = std::pow(alpha, n) * std::pow(std::conj(alpha), m) *
                               std::exp(-mu) /
                               std::sqrt(std::tgamma(n + 1.0) * std::tgamma(m + 1.0));
        CHECK(std::abs(c(n, m) - expect) <= 1e-12);
      }
    }
  }
  SUBCASE("small cutoff is rejected with the tail mass") {
    try {
      coherent_density({3.0}, FockCutoff(5));
      FAIL("expected CutoffTooSmall");
    } catch (const CutoffTooSmall& e) {
      CHECK(e.tail_mass > 0.5);
    }
  }
}

TEST_CASE("coherent_mke_mean closed forms") {
  SUBCASE("matching mean photon number keeps the prior") {
    const auto est = coherent_mke_mean({Complex(2.0, 0.0)}, 4.0);
    CHECK(est.beta == Complex(2.0, 0.0));
    CHECK(est.lambda == doctest::Approx(0.0));
  }
  SUBCASE("alpha = 2, N = 1") {
    const auto est = coherent_mke_mean({Complex(2.0, 0.0)}, 1.0);
    CHECK(est.beta.real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(est.beta.imag() == doctest::Approx(0.0));
    CHECK(est.lambda == doctest::Approx(std::log(4.0)).epsilon(1e-14));
    CHECK(est.partition == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  }
  SUBCASE("phase of the prior survives") {
    const auto est = coherent_mke_mean({Complex(1.0, 1.0)}, 4.0);
    CHECK(est.beta.real() == doctest::Approx(2.0 * std::cos(M_PI / 4)).epsilon(1e-13));
    CHECK(est.beta.imag() == doctest::Approx(2.0 * std::sin(M_PI / 4)).epsilon(1e-13));
  }
  SUBCASE("amplitude-lambda identity beta = alpha e^{-lambda/2}") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> amp(0.3, 2.0), ph(-M_PI, M_PI), nn(0.1, 4.0);
    for (int rep = 0; rep < 25; ++rep) {
      const Complex alpha = std::polar(amp(rng), ph(rng));
      const double n_mean = nn(rng);
      const auto est = coherent_mke_mean({alpha}, n_mean);
      CHECK(std::abs(est.beta - alpha * std::exp(-est.lambda / 2.0)) <= 1e-12);
    }
  }
  SUBCASE("nonpositive mean photon number") {
    CHECK_THROWS_AS(coherent_mke_mean({Complex(1.0, 0.0)}, 0.0), InvalidMean);
  }
}

TEST_CASE("fock_mke_mean cross-checks the closed form") {
  SUBCASE("prior mean keeps the prior") {
    const auto res = fock_mke_mean({Complex(1.0, 0.0)}, 1.0, FockCutoff(25), 1e-10);
    CHECK(res.lambdas[0] == 0.0);
  }
  SUBCASE("alpha = 2, N = 1 lands on the coherent state of one photon") {
    const auto res = fock_mke_mean({Complex(2.0, 0.0)}, 1.0, FockCutoff(30), 1e-11);
    const DensityMatrix target = coherent_density({Complex(1.0, 0.0)}, FockCutoff(30));
    const double fidelity =
        (target.matrix() * res.posterior.matrix()).trace().real();
    CHECK(fidelity >= 1.0 - 1e-8);
    CHECK(res.lambdas[0] == doctest::Approx(std::log(4.0)).epsilon(1e-9));
  }
  SUBCASE("uniform prior gives the truncated thermal state") {
    const int d = 16;
    ComplexMatrix id = ComplexMatrix::Identity(d, d) / double(d);
    ComplexMatrix number = ComplexMatrix::Zero(d, d);
    for (int n = 0; n < d; ++n) number(n, n) = n;
    const double n_mean = 2.0;
    const auto res =
        mke_single_mean(DensityMatrix(id), {Observable(number), n_mean}, 1e-11);
    // classical Gibbs solve on the diagonal
    std::vector<double> q(static_cast<std::size_t>(d), 1.0 / d), a(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) a[static_cast<std::size_t>(n)] = n;
    const auto gibbs = classical_mke_estimate(ClassicalDistribution(q), {a}, n_mean, 1e-11);
    for (int n = 0; n < d; ++n) {
      CHECK(std::abs(res.posterior(n, n).real() -
                     gibbs.posterior[static_cast<std::size_t>(n)]) <= 1e-9);
    }
  }
}

TEST_CASE("reconstruct_from_photon_distribution") {
  SUBCASE("point distribution gives the vacuum for any phase") {
    for (double phi : {0.0, 0.4, -2.0}) {
      const DensityMatrix out = reconstruct_from_photon_distribution(
          phi, PhotonDistribution({1.0, 0.0, 0.0}));
      CHECK(out(0, 0).real() == doctest::Approx(1.0));
    }
  }
  SUBCASE("half-half distribution gives the even superposition at phi = 0") {
    const DensityMatrix out = reconstruct_from_photon_distribution(
        0.0, PhotonDistribution({0.5, 0.5, 0.0}));
    CHECK(std::abs(out(0, 1).real() - 0.5) <= 1e-14);
    CHECK(std::abs(out(0, 1).imag()) <= 1e-14);
  }
  SUBCASE("entrywise formula, rank one, diagonal pinned") {
    std::mt19937_64 rng(72);
    for (int rep = 0; rep < 10; ++rep) {
      auto p = testers::rand_distribution(8, rng);
      std::uniform_real_distribution<double> ph(-M_PI, M_PI);
      const double phi = ph(rng);
      const DensityMatrix out =
          reconstruct_from_photon_distribution(phi, PhotonDistribution(p));
      for (int n = 0; n < 8; ++n) {
        for (int m = 0; m < 8; ++m) {
          const Complex expect = std::sqrt(p[static_cast<std::size_t>(n)] *
                                           p[static_cast<std::size_t>(m)]) *
                                 std::exp(Complex(0.0, phi * (n - m)));
          CHECK(std::abs(out(n, m) - expect) <= 1e-12);
        }
        CHECK(std::abs(out(n, n).real() - p[static_cast<std::size_t>(n)]) <= 1e-12);
      }
      const auto sd = eigh(out.as_operator());
      CHECK(sd.eigenvalues[6] <= 1e-10);  // second-largest eigenvalue
    }
  }
  SUBCASE("agrees with the generic distribution estimator on a coherent prior") {
    // p supported on the low Fock states, where the truncated coherent
    // prior's diagonal stays above the support threshold
    std::mt19937_64 rng(73);
    const int d = 8;
    const double phi = 0.9;
    auto head = testers::rand_distribution(4, rng);
    std::vector<double> p(static_cast<std::size_t>(d), 0.0);
    for (std::size_t k = 0; k < 4; ++k) p[k] = head[k];
    const DensityMatrix direct =
        reconstruct_from_photon_distribution(phi, PhotonDistribution(p));
    for (double amp : {0.15, 0.3}) {  // amplitude must not matter
      const DensityMatrix prior =
          coherent_density({std::polar(amp, phi)}, FockCutoff(d));
      const auto generic = mke_from_distribution(
          prior, {ComplexMatrix::Identity(d, d), ClassicalDistribution(p)});
      CHECK(frobenius_distance(generic.posterior.matrix(), direct.matrix()) <= 1e-10);
    }
  }
}

TEST_CASE("displacement estimation") {
  SUBCASE("undisplaced Poisson data returns beta = 0") {
    const auto p = poisson_window(1.0, 12);
    const auto est =
        estimate_displacement_mke(1.0, PhotonDistribution(p), FockCutoff(12));
    CHECK(std::abs(est.beta) <= 1e-9);
    CHECK(est.spread <= 1e-9);
  }
  SUBCASE("exact displaced data recovered to 1e-6 with all determinations agreeing") {
    const double alpha = 1.0, beta = 0.5;
    const auto p = poisson_window((alpha + beta) * (alpha + beta), 12);
    const auto est =
        estimate_displacement_mke(alpha, PhotonDistribution(p), FockCutoff(12));
    CHECK(std::abs(est.beta - beta) <= 1e-6);
    CHECK(est.spread <= 1e-6);
    CHECK(est.determinations.size() == 144);  // D'^2
  }
  SUBCASE("direct method gives the same estimate with D' determinations") {
    const double alpha = 1.0, beta = 0.5;
    const auto p = poisson_window((alpha + beta) * (alpha + beta), 12);
    const auto est =
        estimate_displacement_direct(alpha, PhotonDistribution(p), FockCutoff(12));
    CHECK(std::abs(est.beta - beta) <= 1e-6);
    CHECK(est.determinations.size() == 12);  // D'
    for (const auto& det : est.determinations) CHECK(det.n == det.m);
  }
  SUBCASE("boundary distribution flags NoRoot(0,0)") {
    std::vector<double> p(12, 0.0);
    p[0] = 1.0;
    try {
      estimate_displacement_mke(1.0, PhotonDistribution(p), FockCutoff(12));
      FAIL("expected NoRoot");
    } catch (const NoRoot& e) {
      CHECK(e.n == 0);
      CHECK(e.m == 0);
    }
  }
  SUBCASE("noisy spreads shrink with the shot count") {
    const double alpha = 1.0, beta = 0.5;
    auto p = poisson_window((alpha + beta) * (alpha + beta), 12);
    double sum = 0.0;
    for (double v : p) sum += v;
    for (double& v : p) v /= sum;
    const ClassicalDistribution full(p);
    int wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      double spread[2];
      int i = 0;
      for (std::int64_t shots : {int64_t(1000), int64_t(100000)}) {
        const auto counts = sample_outcomes(full, shots, seed);
        std::vector<double> phat(p.size());
        for (std::size_t k = 0; k < p.size(); ++k) {
          phat[k] = double(counts.counts[k]) / double(shots);
        }
        const auto est = estimate_displacement_mke(alpha, PhotonDistribution(phat),
                                                   FockCutoff(12));
        spread[i++] = est.spread;
      }
      if (spread[1] < spread[0]) ++wins;
    }
    CHECK(wins >= 8);
  }
}

TEST_CASE("estimate_weak_hamiltonian_fock") {
  SUBCASE("unchanged distribution gives the zero Hamiltonian") {
    std::mt19937_64 rng(74);
    const int d = 5;
    // full-rank nondegenerate prior in a random basis
    const ComplexMatrix u = testers::rand_unitary(d, rng);
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    double sum = 0.0;
    for (int n = 0; n < d; ++n) sum += std::pow(0.55, n);
    for (int n = 0; n < d; ++n) diag(n, n) = std::pow(0.55, n) / sum;
    const DensityMatrix tau(ComplexMatrix(u * diag * u.adjoint()));
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) p[static_cast<std::size_t>(n)] = tau(n, n).real();
    const auto h =
        estimate_weak_hamiltonian_fock(tau, PhotonDistribution(p), 1e-3, FockCutoff(d));
    CHECK(h.matrix().cwiseAbs().maxCoeff() <= 1e-9);
  }
  SUBCASE("rank-deficient coherent prior raises DegeneratePrior") {
    const int d = 8;
    const DensityMatrix tau = coherent_density({0.3}, FockCutoff(d));
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int n = 0; n < d; ++n) p[static_cast<std::size_t>(n)] = tau(n, n).real();
    CHECK_THROWS_AS(
        estimate_weak_hamiltonian_fock(tau, PhotonDistribution(p), 1e-3, FockCutoff(d)),
        DegeneratePrior);
  }
  SUBCASE("outcome outside the prior diagonal support raises NoSupport") {
    const int d = 4;
    ComplexMatrix diag = ComplexMatrix::Zero(d, d);
    diag(0, 0) = 0.5;
    diag(1, 1) = 0.3;
    diag(2, 2) = 0.2;  // no weight on |3>
    const DensityMatrix tau(diag);
    CHECK_THROWS_AS(
        estimate_weak_hamiltonian_fock(tau, PhotonDistribution({0.4, 0.3, 0.2, 0.1}),
                                       1e-3, FockCutoff(d)),
        NoSupport);
  }
}
