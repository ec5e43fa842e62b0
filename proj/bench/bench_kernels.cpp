#include <benchmark/benchmark.h>

#include <Eigen/QR>
#include <numbers>
#include <random>
#include <vector>

#include "tubehom/kernels.hpp"

using namespace tubehom;

namespace {

std::vector<kernels::RootJob> root_jobs(std::size_t count) {
  std::vector<kernels::RootJob> jobs;
  for (std::size_t s = 0; s < count; ++s) {
    const double mu = std::numbers::pi * std::numbers::pi * (1.0 + 0.37 * static_cast<double>(s));
    for (int n = 1; n <= 4; ++n) {
      jobs.push_back({n, n % 2 ? Branch::Tan : Branch::Cot, mu, s});
      jobs.push_back({n, n % 2 ? Branch::Cot : Branch::Tan, mu, s});
    }
  }
  return jobs;
}

void solve_roots(benchmark::State& state, Execution execution) {
  const auto jobs = root_jobs(static_cast<std::size_t>(state.range(0)));
  const PencilParams params{1.0, 1.0, 2 * std::numbers::pi};
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::solve_roots(jobs, params, 1e-12, execution));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(jobs.size()));
}

void orthogonalize(benchmark::State& state, Execution execution) {
  const Eigen::Index rows = state.range(0);
  const Eigen::Index cols = 200;
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd raw(rows, cols);
  for (Eigen::Index i = 0; i < raw.size(); ++i) raw.data()[i] = normal(rng);
  const Eigen::MatrixXd basis = Eigen::HouseholderQR<Eigen::MatrixXd>(raw).householderQ() *
                                Eigen::MatrixXd::Identity(rows, cols);
  Eigen::VectorXd start(rows);
  for (Eigen::Index i = 0; i < rows; ++i) start[i] = normal(rng);
  for (auto _ : state) {
    Eigen::VectorXd v = start;
    kernels::orthogonalize(basis, cols, v, execution);
    benchmark::DoNotOptimize(v.data());
  }
}

}  // namespace

BENCHMARK_CAPTURE(solve_roots, serial, Execution::Serial)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(solve_roots, parallel, Execution::Parallel)->Arg(64)->Arg(512)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(orthogonalize, serial, Execution::Serial)->Arg(4096)->Arg(32768)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(orthogonalize, parallel, Execution::Parallel)->Arg(4096)->Arg(32768)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
