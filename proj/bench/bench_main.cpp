// Timing comparison of the OpenMP kernels against their serial references:
// brute-force posterior enumeration, forward sampling, and independent
// backtest folds.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dnmcast/backtest.hpp"
#include "dnmcast/carsales.hpp"
#include "dnmcast/diagnostics.hpp"
#include "dnmcast/inference.hpp"
#include "dnmcast/sampling.hpp"
#include "dnmcast/simulate.hpp"
#include "random_models.hpp"

using namespace dnmcast;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_enumeration(int nodes) {
  SplitMix64 rng(4242);
  auto net = testsupport::random_binary_network(rng, nodes, 3);
  auto ev = testsupport::random_evidence(rng, net, 0.15);
  int query = 0;
  while (ev.count(query)) ++query;

  auto t0 = std::chrono::steady_clock::now();
  auto serial = posterior_enumerate_serial(net, ev, query);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto parallel = posterior_enumerate(net, ev, query);
  double t_parallel = seconds_since(t0);

  double diff = 0.0;
  for (int s = 0; s < serial.size(); ++s) diff = std::max(diff, std::fabs(serial[s] - parallel[s]));
  std::printf("enumerate %2d nodes   serial %8.1f ms   parallel %8.1f ms   x%.2f   |diff| %.2g\n",
              nodes, t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel, diff);
}

void bench_sampling(int samples) {
  auto model = CompiledModel::compile(build_carsales());
  auto ground = unroll(model, 0, model.initial_alphas());

  auto t0 = std::chrono::steady_clock::now();
  auto serial = forward_sample_serial(ground.network, 7, samples);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  auto parallel = forward_sample(ground.network, 7, samples);
  double t_parallel = seconds_since(t0);

  std::printf("sample %9d draws  serial %8.1f ms   parallel %8.1f ms   x%.2f   identical %s\n",
              samples, t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel,
              serial.states == parallel.states ? "yes" : "NO");
}

void bench_backtest_folds(int folds, int periods) {
  auto model = std::make_shared<const CompiledModel>(CompiledModel::compile(build_carsales()));

  auto run_fold = [&](int seed) {
    auto series = simulate_series(*model, periods, static_cast<std::uint64_t>(seed));
    auto report = backtest(model, series);
    return residuals(report, "supply", "H").size();
  };

  auto t0 = std::chrono::steady_clock::now();
  long serial_total = 0;
  for (int seed = 0; seed < folds; ++seed) serial_total += run_fold(seed);
  double t_serial = seconds_since(t0);

  t0 = std::chrono::steady_clock::now();
  long parallel_total = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : parallel_total)
  for (int seed = 0; seed < folds; ++seed) parallel_total += run_fold(seed);
  double t_parallel = seconds_since(t0);

  std::printf("backtest %3d folds    serial %8.1f ms   parallel %8.1f ms   x%.2f   identical %s\n",
              folds, t_serial * 1e3, t_parallel * 1e3, t_serial / t_parallel,
              serial_total == parallel_total ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  int enum_nodes = 22;
  int samples = 2000000;
  int folds = 50;
  if (argc > 1) enum_nodes = std::atoi(argv[1]);
  if (argc > 2) samples = std::atoi(argv[2]);
  if (argc > 3) folds = std::atoi(argv[3]);

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: disabled (serial build)\n");
#endif

  bench_enumeration(enum_nodes);
  bench_sampling(samples);
  bench_backtest_folds(folds, 300);
  return 0;
}
