#pragma once

// In-process sliced contraction: one shared plan, slices spread over a pool
// of worker threads, partial amplitudes summed at the end.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <thread>
#include <vector>

#include "qcsim/generators.hpp"
#include "qcsim/tensornet.hpp"

namespace qcsim {

enum class ReduceOrder { Deterministic, Arrival };

struct WorkerPoolConfig {
  int workers = 1;
  bool pin = false;  // reserved
  ReduceOrder reduce_order = ReduceOrder::Deterministic;
  /// Allow more workers than hardware threads.
  bool allow_oversubscribe = true;
};

struct ScalingRun {
  std::string circuit_name;
  int n = 0;
  int workers = 1;
  std::uint64_t slices = 1;
  int rep = 0;
  double wall_time_s = 0.0;
  std::vector<double> per_worker_flops;
  Complex result{0.0, 0.0};

  double flops_est() const { return std::accumulate(per_worker_flops.begin(), per_worker_flops.end(), 0.0); }
  /// max / min per-worker FLOPs; 1 for a single worker.
  double imbalance() const {
    if (per_worker_flops.empty()) return 1.0;
    const auto [lo, hi] = std::minmax_element(per_worker_flops.begin(), per_worker_flops.end());
    if (*lo <= 0.0) return std::numeric_limits<double>::infinity();
    return *hi / *lo;
  }
};

/// Longest-processing-time-first: jobs by descending cost (ties: lower
/// index), each to the currently least-loaded worker (ties: lower worker).
inline std::vector<std::vector<std::size_t>> lpt_assign(const std::vector<double>& costs, int workers) {
  if (workers < 1) throw ConfigError("workers must be >= 1");
  std::vector<std::size_t> order(costs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return costs[a] > costs[b]; });
  using Load = std::pair<double, int>;
  std::priority_queue<Load, std::vector<Load>, std::greater<>> heap;
  for (int w = 0; w < workers; ++w) heap.emplace(0.0, w);
  std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(workers));
  for (std::size_t job : order) {
    auto [load, w] = heap.top();
    heap.pop();
    out[static_cast<std::size_t>(w)].push_back(job);
    heap.emplace(load + costs[job], w);
  }
  for (auto& jobs : out) std::sort(jobs.begin(), jobs.end());
  return out;
}

/// Pairwise sum in a fixed tree shape over index order.
inline Complex tree_sum(const std::vector<Complex>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return {0.0, 0.0};
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return tree_sum(v, lo, mid) + tree_sum(v, mid, hi);
}

/// Pathfinding with the samples spread round-robin over `workers` threads;
/// the global best matches find_path() for the same config.
inline ContractionPlan find_path_parallel(const TensorNetwork& net, const PathfinderConfig& cfg, int workers) {
  if (cfg.num_samples < 1) throw ParameterError("num_samples must be >= 1");
  workers = std::clamp(workers, 1, cfg.num_samples);
  if (workers == 1) return find_path(net, cfg);
  std::vector<ContractionPlan> plans(static_cast<std::size_t>(cfg.num_samples));
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w)
    threads.emplace_back([&, w] {
      for (int i = w; i < cfg.num_samples; i += workers) {
        plans[static_cast<std::size_t>(i)] = find_path_sample(net, cfg, i);
        plans[static_cast<std::size_t>(i)].best_sample = i;
      }
    });
  for (auto& t : threads) t.join();
  std::size_t best = 0;
  for (std::size_t i = 1; i < plans.size(); ++i)
    if (plans[i].est_flops < plans[best].est_flops) best = i;
  return plans[best];
}

inline ScalingRun run_sliced(const Circuit& c, const std::string& bitstring, const PathfinderConfig& cfg,
                             const WorkerPoolConfig& pool, std::uint64_t slices) {
  if (pool.workers < 1) throw ConfigError("workers must be >= 1");
  if (slices < 1 || (slices & (slices - 1)) != 0) throw ConfigError("slices must be a power of two >= 1");
  if (slices < static_cast<std::uint64_t>(pool.workers))
    throw ConfigError("slices (" + std::to_string(slices) + ") must be >= workers (" + std::to_string(pool.workers) +
                      ")");
  if (!pool.allow_oversubscribe) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (static_cast<unsigned>(pool.workers) > hw)
      throw ConfigError("workers exceed the " + std::to_string(hw) + " available hardware threads");
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto net = circuit_to_network(c, bitstring);
  const auto plan = choose_slices(net, find_path_parallel(net, cfg, pool.workers), slices);
  const std::uint64_t real_slices = plan.num_slices();

  const std::vector<double> costs(static_cast<std::size_t>(real_slices), plan.est_flops);
  const auto assignment = lpt_assign(costs, pool.workers);

  std::vector<Complex> partial(static_cast<std::size_t>(real_slices));
  Complex arrival_sum{0.0, 0.0};
  std::mutex mu;
  auto work = [&](const std::vector<std::size_t>& jobs) {
    for (std::size_t s : jobs) {
      const Complex v = contract_slice(net, plan, s).value();
      if (pool.reduce_order == ReduceOrder::Deterministic) {
        partial[s] = v;
      } else {
        std::lock_guard lock(mu);
        arrival_sum += v;
      }
    }
  };
  if (pool.workers == 1) {
    work(assignment[0]);
  } else {
    std::vector<std::thread> threads;
    for (const auto& jobs : assignment) threads.emplace_back(work, std::cref(jobs));
    for (auto& t : threads) t.join();
  }

  ScalingRun run;
  run.circuit_name = c.name();
  run.n = c.num_qubits();
  run.workers = pool.workers;
  run.slices = real_slices;
  run.result = pool.reduce_order == ReduceOrder::Deterministic ? tree_sum(partial, 0, partial.size()) : arrival_sum;
  for (const auto& jobs : assignment) {
    double f = 0.0;
    for (std::size_t s : jobs) f += costs[s];
    run.per_worker_flops.push_back(f);
  }
  run.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// One warmup then `repetitions` measured runs per worker count, all on the
/// all-zeros amplitude. Slice count defaults to 4 x workers.
inline std::vector<ScalingRun> strong_scaling_experiment(const GeneratorSpec& spec, const std::vector<int>& worker_counts,
                                                         const PathfinderConfig& cfg, int repetitions,
                                                         std::optional<std::uint64_t> slices = std::nullopt) {
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  const Circuit c = generate(spec);
  const std::string zeros(static_cast<std::size_t>(c.num_qubits()), '0');
  std::vector<ScalingRun> rows;
  for (int w : worker_counts) {
    WorkerPoolConfig pool;
    pool.workers = w;
    const std::uint64_t s = slices.value_or(4ULL * static_cast<std::uint64_t>(std::max(w, 1)));
    run_sliced(c, zeros, cfg, pool, s);
    for (int r = 0; r < repetitions; ++r) {
      auto run = run_sliced(c, zeros, cfg, pool, s);
      run.rep = r;
      rows.push_back(std::move(run));
    }
  }
  return rows;
}

inline constexpr const char* kScalingCsvHeader =
    "circuit,n,workers,slices,rep,wall_time_s,flops_est,imbalance,result_re,result_im";

inline void write_scaling_csv(std::ostream& os, const std::vector<ScalingRun>& rows) {
  os << kScalingCsvHeader << '\n';
  const auto old = os.precision(17);
  for (const auto& r : rows)
    os << r.circuit_name << ',' << r.n << ',' << r.workers << ',' << r.slices << ',' << r.rep << ','
       << r.wall_time_s << ',' << r.flops_est() << ',' << r.imbalance() << ',' << r.result.real() << ','
       << r.result.imag() << '\n';
  os.precision(old);
}

}  // namespace qcsim
