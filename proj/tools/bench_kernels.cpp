// Times the OpenMP kernels against their serial references, and the
// displacement determination sweep against a single-thread run.

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mke/kernels.hpp"
#include "mke/oscillator.hpp"

using namespace mke;

namespace {

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = now_ms();
    f();
    best = std::min(best, now_ms() - t0);
  }
  return best;
}

std::vector<double> poisson_window(double mu, int d) {
  std::vector<double> p(static_cast<std::size_t>(d));
  p[0] = std::exp(-mu);
  for (int n = 1; n < d; ++n) {
    p[static_cast<std::size_t>(n)] = p[static_cast<std::size_t>(n - 1)] * mu / n;
  }
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-34s %12s %12s %8s\n", "kernel", "serial ms", "parallel ms", "speedup");

  std::mt19937_64 rng(2024);
  std::normal_distribution<double> gauss;
  const int reps = quick ? 2 : 5;

  for (const Eigen::Index d : {64, 128, 256}) {
    ComplexMatrix a(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      for (Eigen::Index c = 0; c < d; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
    }
    a = 0.5 * (a + a.adjoint().eval());
    RealVector w = RealVector::Random(d).cwiseAbs();
    ComplexMatrix sink;
    const double ts = time_best_of(
        reps, [&] { sink = kernels::scaled_congruence_serial(w, a); });
    const double tp =
        time_best_of(reps, [&] { sink = kernels::scaled_congruence(w, a); });
    std::printf("scaled_congruence d=%-4lld          %12.4f %12.4f %8.2f\n",
                static_cast<long long>(d), ts, tp, ts / tp);
  }

  for (const std::int64_t shots : {std::int64_t(1000000), std::int64_t(10000000)}) {
    const std::int64_t n = quick ? shots / 100 : shots;
    std::vector<double> cdf{0.1, 0.3, 0.55, 0.8, 0.95, 1.0};
    std::vector<std::int64_t> sink;
    const double ts = time_best_of(
        reps, [&] { sink = kernels::multinomial_counts_serial(cdf, n, 7); });
    const double tp =
        time_best_of(reps, [&] { sink = kernels::multinomial_counts(cdf, n, 7); });
    std::printf("multinomial_counts shots=%-9lld %12.4f %12.4f %8.2f\n",
                static_cast<long long>(n), ts, tp, ts / tp);
  }

  {
    const int d = quick ? 24 : 48;
    const double x = 2.5;  // alpha 2, beta 0.5
    const PhotonDistribution p(poisson_window(x * x, d));
    DisplacementEstimate sink{};
    const auto run = [&] {
      sink = estimate_displacement_mke(2.0, p, FockCutoff(d));
    };
#ifdef _OPENMP
    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
    const double ts = time_best_of(reps, run);
    omp_set_num_threads(max_threads);
    const double tp = time_best_of(reps, run);
#else
    const double ts = time_best_of(reps, run);
    const double tp = ts;
#endif
    std::printf("displacement sweep D=%-4d          %12.4f %12.4f %8.2f\n", d, ts,
                tp, ts / tp);
    std::printf("  (beta %.6f from %zu determinations)\n", sink.beta,
                sink.determinations.size());
  }
  return 0;
}
