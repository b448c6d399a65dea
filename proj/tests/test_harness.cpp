#include <gtest/gtest.h>

#include <sstream>

#include "qcsim/harness.hpp"

using namespace qcsim;

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

Circuit gen(Family f, int n) {
  GeneratorSpec s;
  s.family = f;
  s.n = n;
  return generate(s);
}

}  // namespace

TEST(Timing, SummaryStatistics) {
  const auto s = summarize({5, 1, 4, 2, 3, 6, 7, 8, 9, 10});
  EXPECT_EQ(s.count, 10u);
  EXPECT_DOUBLE_EQ(s.mean, 5.5);
  EXPECT_DOUBLE_EQ(s.p90, 9.0);
  EXPECT_DOUBLE_EQ(s.min, 1.0);
  EXPECT_DOUBLE_EQ(s.max, 10.0);
  EXPECT_EQ(summarize({}).count, 0u);
  EXPECT_DOUBLE_EQ(summarize({2.5}).p90, 2.5);
}

TEST(Timing, WarmupsAreExcluded) {
  int calls = 0;
  const auto times = time_runs(3, 10, [&] { ++calls; });
  EXPECT_EQ(calls, 13);
  EXPECT_EQ(times.size(), 10u);
  for (double t : times) EXPECT_GE(t, 0.0);
  EXPECT_THROW(time_runs(0, 0, [] {}), ConfigError);
}

TEST(Bench, StateVectorRecords) {
  BenchOptions opt;
  opt.warmups = 1;
  opt.measured = 4;
  opt.family = "qft";
  const auto rows = bench_statevector(gen(Family::QFT, 8), opt);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].backend, "sv");
  EXPECT_EQ(rows[0].precision, "single");
  EXPECT_EQ(rows[0].mem_bytes_est, sv_memory_bytes(8, Precision::Single));
  EXPECT_EQ(rows[3].rep, 3);
}

TEST(Bench, TensorNetTotalsCoverComponents) {
  BenchOptions opt;
  opt.warmups = 1;
  opt.measured = 3;
  const auto rows = bench_tensornet(gen(Family::VQE, 8), opt);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.backend, "tn");
    EXPECT_GE(r.total_time_s, r.pathfind_time_s);
    EXPECT_GE(r.total_time_s, r.contract_or_run_time_s);
    EXPECT_GT(r.peak_intermediate_elements, 0u);
    EXPECT_EQ(r.pathfind_samples, opt.pathfinder.num_samples);
  }
}

TEST(Bench, CsvRoundTrip) {
  BenchOptions opt;
  opt.warmups = 0;
  opt.measured = 2;
  opt.seed = 77;
  opt.family = "bell";
  const auto rows = bench_statevector(bell_circuit(), opt);
  std::ostringstream os;
  write_bench_csv(os, rows);
  const auto cells = parse_csv(os.str());
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].size(), 13u);
  EXPECT_EQ(cells[0][0], "circuit");
  EXPECT_EQ(cells[0][12], "rep");
  EXPECT_EQ(cells[1][0], "bell");
  EXPECT_EQ(cells[1][2], "2");
  EXPECT_EQ(std::stoull(cells[2][11]), 77u);
  EXPECT_DOUBLE_EQ(std::stod(cells[2][8]), rows[1].total_time_s);
}

TEST(PathStudy, RowsPerBudget) {
  const auto study = path_study(gen(Family::QFT, 8), {1, 4, 16}, 2, 5);
  ASSERT_EQ(study.rows.size(), 3u);
  for (std::size_t i = 1; i < study.rows.size(); ++i)
    EXPECT_LE(study.rows[i].best_flops, study.rows[i - 1].best_flops);
  EXPECT_EQ(study.predicted, advise_circuit(gen(Family::QFT, 8)).pathfinding_class);
  std::ostringstream os;
  write_path_study_csv(os, gen(Family::QFT, 8), study);
  const auto cells = parse_csv(os.str());
  EXPECT_EQ(cells.size(), 4u);
  EXPECT_EQ(cells[0].size(), 10u);
  EXPECT_EQ(path_study(bell_circuit(), {1}, 1).rows.size(), 1u);
  EXPECT_THROW(path_study(bell_circuit(), {}, 1), ConfigError);
}

TEST(MemorySweep, Rows) {
  const auto rows = memory_sweep(1, 4, {Family::HamiltonianSim});
  ASSERT_EQ(rows.size(), 4u + 3u);
  EXPECT_EQ(rows[0].family, "statevector");
  EXPECT_EQ(rows[0].n, 1);
  EXPECT_EQ(rows[0].bytes_single, 16u);
  EXPECT_EQ(rows[4].family, "hamiltonian");
  EXPECT_EQ(rows[4].n, 2);
  std::ostringstream os;
  write_memory_csv(os, rows);
  const auto cells = parse_csv(os.str());
  EXPECT_EQ(cells[0][0], "kind");
  EXPECT_EQ(cells.size(), rows.size() + 1);
  EXPECT_THROW(memory_sweep(0, 3), ConfigError);
  EXPECT_EQ(memory_sweep(22, 22, {}).at(0).bytes_single, 33554432u);
}
