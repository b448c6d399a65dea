#include <gtest/gtest.h>

#include <sstream>

#include "qcsim/sliced_executor.hpp"

using namespace qcsim;

namespace {

Circuit gen(Family f, int n) {
  GeneratorSpec s;
  s.family = f;
  s.n = n;
  return generate(s);
}

bool close_rel(Complex a, Complex b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Lpt, AssignsLargestFirstToLeastLoaded) {
  const auto a = lpt_assign({5, 4, 3, 3, 3}, 2);
  // 5 -> w0, 4 -> w1, 3 -> w1 (7), 3 -> w0 (8), 3 -> w1 (10)
  EXPECT_EQ(a[0], (std::vector<std::size_t>{0, 3}));
  EXPECT_EQ(a[1], (std::vector<std::size_t>{1, 2, 4}));
  const auto even = lpt_assign(std::vector<double>(16, 1.0), 4);
  for (const auto& jobs : even) EXPECT_EQ(jobs.size(), 4u);
  EXPECT_THROW(lpt_assign({1.0}, 0), ConfigError);
}

TEST(Lpt, BalancedWithinTwiceMean) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(1.0, 10.0);
  for (int w : {1, 2, 3, 4}) {
    std::vector<double> costs(static_cast<std::size_t>(4 * w));
    for (auto& c : costs) c = u(rng);
    double total = 0, worst = 0;
    for (double c : costs) total += c;
    for (const auto& jobs : lpt_assign(costs, w)) {
      double load = 0;
      for (auto j : jobs) load += costs[j];
      worst = std::max(worst, load);
    }
    EXPECT_LE(worst, 2.0 * total / w);
  }
}

TEST(SlicedExecutor, DegenerateMatchesAmplitude) {
  const auto c = gen(Family::QFT, 10);
  const std::string zeros(10, '0');
  PathfinderConfig cfg;
  const auto run = run_sliced(c, zeros, cfg, {}, 1);
  EXPECT_EQ(run.result, amplitude(c, zeros, cfg));
  EXPECT_EQ(run.slices, 1u);
  EXPECT_EQ(run.imbalance(), 1.0);
}

TEST(SlicedExecutor, WorkerCountsAgree) {
  const auto c = gen(Family::QFT, 10);
  const std::string zeros(10, '0');
  const Complex ref = amplitude(c, zeros);
  for (int w : {1, 2, 4}) {
    WorkerPoolConfig pool;
    pool.workers = w;
    const auto run = run_sliced(c, zeros, {}, pool, 4);
    EXPECT_TRUE(close_rel(run.result, ref, 1e-8)) << "workers=" << w;
    EXPECT_EQ(run.per_worker_flops.size(), static_cast<std::size_t>(w));
  }
}

TEST(SlicedExecutor, BellTwoWorkers) {
  WorkerPoolConfig pool;
  pool.workers = 2;
  const auto run = run_sliced(bell_circuit(), "00", {}, pool, 2);
  EXPECT_NEAR(std::abs(run.result - Complex(1.0 / std::sqrt(2.0))), 0.0, 1e-10);
}

TEST(SlicedExecutor, DeterministicReduceIsBitIdentical) {
  const auto c = gen(Family::QAOA, 8);
  WorkerPoolConfig pool;
  pool.workers = 4;
  const auto first = run_sliced(c, "01100110", {}, pool, 16).result;
  for (int i = 0; i < 5; ++i) {
    const auto again = run_sliced(c, "01100110", {}, pool, 16).result;
    EXPECT_EQ(again.real(), first.real());
    EXPECT_EQ(again.imag(), first.imag());
  }
  pool.reduce_order = ReduceOrder::Arrival;
  EXPECT_TRUE(close_rel(run_sliced(c, "01100110", {}, pool, 16).result, first, 1e-8));
}

TEST(SlicedExecutor, ConfigurationErrors) {
  WorkerPoolConfig pool;
  pool.workers = 4;
  EXPECT_THROW(run_sliced(bell_circuit(), "00", {}, pool, 2), ConfigError);
  EXPECT_THROW(run_sliced(bell_circuit(), "00", {}, pool, 6), ConfigError);
  pool.workers = 0;
  EXPECT_THROW(run_sliced(bell_circuit(), "00", {}, pool, 2), ConfigError);
}

TEST(SlicedExecutor, ParallelPathfindingMatchesSequential) {
  const auto net = circuit_to_network(gen(Family::QFT, 9), std::string(9, '0'));
  PathfinderConfig cfg;
  cfg.num_samples = 7;
  cfg.seed = 11;
  const auto a = find_path(net, cfg);
  for (int w : {2, 3, 8}) {
    const auto b = find_path_parallel(net, cfg, w);
    EXPECT_EQ(a.steps, b.steps);
    EXPECT_EQ(a.best_sample, b.best_sample);
  }
}

TEST(StrongScaling, RowsAndCsv) {
  GeneratorSpec spec;
  spec.family = Family::VQE;
  spec.n = 6;
  const auto rows = strong_scaling_experiment(spec, {1, 2}, {}, 3);
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[0].workers, 1);
  EXPECT_EQ(rows[0].slices, 4u);
  EXPECT_EQ(rows[5].workers, 2);
  EXPECT_EQ(rows[5].slices, 8u);
  EXPECT_EQ(rows[2].rep, 2);
  std::ostringstream os;
  write_scaling_csv(os, rows);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, kScalingCsvHeader);
  int count = 0;
  while (std::getline(in, line)) {
    ++count;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 9);
  }
  EXPECT_EQ(count, 6);
  EXPECT_THROW(strong_scaling_experiment(spec, {1}, {}, 0), ConfigError);
  EXPECT_EQ(strong_scaling_experiment(spec, {1}, {}, 1).size(), 1u);
}
