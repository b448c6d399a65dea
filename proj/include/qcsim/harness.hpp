#pragma once

// Benchmark harness: warmup/measure timing on a monotonic clock, per-run
// records, the pathfinding-budget study and the memory sweep.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "qcsim/advisor.hpp"
#include "qcsim/generators.hpp"
#include "qcsim/statevector.hpp"
#include "qcsim/tensornet.hpp"

namespace qcsim {

inline constexpr int kDefaultWarmups = 3;
inline constexpr int kDefaultMeasured = 10;
inline constexpr int kDefaultScalingReps = 30;

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct TimingStats {
  std::size_t count = 0;
  double mean = 0.0;
  double p90 = 0.0;
  double min = 0.0;
  double max = 0.0;
};

/// Mean and nearest-rank 90th percentile.
inline TimingStats summarize(std::vector<double> xs) {
  TimingStats s;
  s.count = xs.size();
  if (xs.empty()) return s;
  std::sort(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  const auto rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(xs.size())));
  s.p90 = xs[std::max<std::size_t>(rank, 1) - 1];
  s.min = xs.front();
  s.max = xs.back();
  return s;
}

/// Runs `fn` warmups + measured times and returns the measured durations.
inline std::vector<double> time_runs(int warmups, int measured, const std::function<void()>& fn) {
  if (warmups < 0 || measured < 1) throw ConfigError("need warmups >= 0 and measured runs >= 1");
  for (int i = 0; i < warmups; ++i) fn();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(measured));
  for (int i = 0; i < measured; ++i) {
    const auto t0 = Clock::now();
    fn();
    out.push_back(seconds_since(t0));
  }
  return out;
}

struct BenchRecord {
  std::string circuit;
  std::string family;
  int n = 0;
  std::string backend;
  std::string precision;
  int pathfind_samples = 0;
  double pathfind_time_s = 0.0;
  double contract_or_run_time_s = 0.0;
  double total_time_s = 0.0;
  std::uint64_t mem_bytes_est = 0;
  std::uint64_t peak_intermediate_elements = 0;
  std::uint64_t seed = 0;
  int rep = 0;
};

inline constexpr const char* kBenchCsvHeader =
    "circuit,family,n,backend,precision,pathfind_samples,pathfind_time_s,contract_or_run_time_s,total_time_s,"
    "mem_bytes_est,peak_intermediate_elements,seed,rep";

inline void write_bench_csv(std::ostream& os, const std::vector<BenchRecord>& rows) {
  os << kBenchCsvHeader << '\n';
  const auto old = os.precision(17);
  for (const auto& r : rows)
    os << r.circuit << ',' << r.family << ',' << r.n << ',' << r.backend << ',' << r.precision << ','
       << r.pathfind_samples << ',' << r.pathfind_time_s << ',' << r.contract_or_run_time_s << ',' << r.total_time_s
       << ',' << r.mem_bytes_est << ',' << r.peak_intermediate_elements << ',' << r.seed << ',' << r.rep << '\n';
  os.precision(old);
}

struct BenchOptions {
  Precision precision = Precision::Single;
  PathfinderConfig pathfinder{};
  int warmups = kDefaultWarmups;
  int measured = kDefaultMeasured;
  std::uint64_t seed = 0;
  std::string family;
  int max_qubits = max_statevector_qubits();
};

/// One record per measured state-vector run.
inline std::vector<BenchRecord> bench_statevector(const Circuit& c, const BenchOptions& opt) {
  auto once = [&] {
    if (opt.precision == Precision::Single) (void)run<float>(c, opt.max_qubits);
    else (void)run<double>(c, opt.max_qubits);
  };
  const auto times = time_runs(opt.warmups, opt.measured, once);
  std::vector<BenchRecord> rows;
  for (std::size_t i = 0; i < times.size(); ++i) {
    BenchRecord r;
    r.circuit = c.name();
    r.family = opt.family;
    r.n = c.num_qubits();
    r.backend = "sv";
    r.precision = std::string(precision_name(opt.precision));
    r.contract_or_run_time_s = times[i];
    r.total_time_s = times[i];
    r.mem_bytes_est = sv_memory_bytes(c.num_qubits(), opt.precision);
    r.peak_intermediate_elements = std::uint64_t{1} << c.num_qubits();
    r.seed = opt.seed;
    r.rep = static_cast<int>(i);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// Amplitude <0...0|C|0...0> by pathfinding plus contraction; the total is
/// their sum. Contraction always runs in double precision; the memory
/// estimate follows `opt.precision`.
inline std::vector<BenchRecord> bench_tensornet(const Circuit& c, const BenchOptions& opt) {
  const auto net = circuit_to_network(c, std::string(static_cast<std::size_t>(c.num_qubits()), '0'));
  auto once = [&](BenchRecord* out) {
    const auto t0 = Clock::now();
    const auto plan = find_path(net, opt.pathfinder);
    const double tp = seconds_since(t0);
    const auto t1 = Clock::now();
    (void)contract(net, plan);
    const double tc = seconds_since(t1);
    if (out) {
      out->pathfind_time_s = tp;
      out->contract_or_run_time_s = tc;
      out->total_time_s = tp + tc;
      out->peak_intermediate_elements = plan.est_peak_elements;
    }
  };
  for (int i = 0; i < opt.warmups; ++i) once(nullptr);
  std::vector<BenchRecord> rows;
  for (int i = 0; i < opt.measured; ++i) {
    BenchRecord r;
    once(&r);
    r.circuit = c.name();
    r.family = opt.family;
    r.n = c.num_qubits();
    r.backend = "tn";
    r.precision = std::string(precision_name(opt.precision));
    r.pathfind_samples = opt.pathfinder.num_samples;
    r.mem_bytes_est = tn_memory_bytes(net, opt.precision);
    r.seed = opt.seed;
    r.rep = i;
    rows.push_back(std::move(r));
  }
  return rows;
}

struct PathStudyRow {
  int samples = 0;
  double pathfind_time_s = 0.0;
  double best_flops = 0.0;
  std::uint64_t peak_elements = 0;
  TimingStats contract;
};

struct PathStudy {
  std::vector<PathStudyRow> rows;
  PathfindingClass observed = PathfindingClass::Unknown;
  PathfindingClass predicted = PathfindingClass::Unknown;
  /// (max - min) / max of mean contraction time across budgets.
  double contract_time_spread = 0.0;
  double flops_gain = 0.0;  // 1 - best_flops(max samples) / best_flops(min samples)
};

inline constexpr double kFlatContractSpread = 0.10;
inline constexpr double kFlopsGainThreshold = 0.01;

/// For every budget: single-threaded pathfinding time, best est_flops and the
/// contraction time of the chosen plan over `repetitions` runs (after one
/// warmup). Observed class: unbounded when contraction time falls by more
/// than 10% from the smallest to the largest budget, contraction_bound when
/// only est_flops improves, pathfinding_bound when neither moves.
inline PathStudy path_study(const Circuit& c, const std::vector<int>& samples_list, int repetitions,
                            std::uint64_t seed = 0) {
  if (samples_list.empty()) throw ConfigError("samples list is empty");
  if (repetitions < 1) throw ConfigError("repetitions must be >= 1");
  const auto net = circuit_to_network(c, std::string(static_cast<std::size_t>(c.num_qubits()), '0'));
  PathStudy study;
  for (int s : samples_list) {
    PathfinderConfig cfg;
    cfg.num_samples = s;
    cfg.seed = seed;
    PathStudyRow row;
    row.samples = s;
    const auto t0 = Clock::now();
    const auto plan = find_path(net, cfg);
    row.pathfind_time_s = seconds_since(t0);
    row.best_flops = plan.est_flops;
    row.peak_elements = plan.est_peak_elements;
    row.contract = summarize(time_runs(1, repetitions, [&] { (void)contract(net, plan); }));
    study.rows.push_back(row);
  }
  double lo = study.rows.front().contract.mean, hi = lo;
  for (const auto& r : study.rows) {
    lo = std::min(lo, r.contract.mean);
    hi = std::max(hi, r.contract.mean);
  }
  study.contract_time_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
  const auto& first = study.rows.front();
  const auto& last = study.rows.back();
  study.flops_gain = first.best_flops > 0.0 ? 1.0 - last.best_flops / first.best_flops : 0.0;
  const double time_gain = first.contract.mean > 0.0 ? 1.0 - last.contract.mean / first.contract.mean : 0.0;
  if (time_gain > kFlatContractSpread) study.observed = PathfindingClass::Unbounded;
  else if (study.flops_gain > kFlopsGainThreshold) study.observed = PathfindingClass::ContractionBound;
  else study.observed = PathfindingClass::PathfindingBound;
  study.predicted = advise_circuit(c).pathfinding_class;
  return study;
}

inline constexpr const char* kPathStudyCsvHeader =
    "circuit,n,samples,pathfind_time_s,best_flops,peak_elements,contract_mean_s,contract_p90_s,observed_class,"
    "predicted_class";

inline void write_path_study_csv(std::ostream& os, const Circuit& c, const PathStudy& study) {
  os << kPathStudyCsvHeader << '\n';
  const auto old = os.precision(17);
  for (const auto& r : study.rows)
    os << c.name() << ',' << c.num_qubits() << ',' << r.samples << ',' << r.pathfind_time_s << ',' << r.best_flops
       << ',' << r.peak_elements << ',' << r.contract.mean << ',' << r.contract.p90 << ','
       << pathfinding_class_name(study.observed) << ',' << pathfinding_class_name(study.predicted) << '\n';
  os.precision(old);
}

struct MemoryRow {
  std::string family;  // "statevector" for the dense rows
  int n = 0;
  std::uint64_t num_tensors = 0;
  std::uint64_t bytes_single = 0;
  std::uint64_t bytes_double = 0;
};

/// Dense state-vector bytes per n, then the open circuit network's bytes for
/// every family (n >= 2).
inline std::vector<MemoryRow> memory_sweep(int n_min, int n_max, const std::vector<Family>& families = {
                                                                     kAllFamilies.begin(), kAllFamilies.end()}) {
  if (n_min < 1 || n_max < n_min || n_max > 62) throw ConfigError("invalid qubit range");
  std::vector<MemoryRow> rows;
  for (int n = n_min; n <= n_max; ++n)
    rows.push_back({"statevector", n, 0, sv_memory_bytes(n, Precision::Single), sv_memory_bytes(n, Precision::Double)});
  for (Family f : families)
    for (int n = std::max(n_min, 2); n <= n_max; ++n) {
      GeneratorSpec spec;
      spec.family = f;
      spec.n = n;
      const auto net = circuit_to_network(generate(spec));
      rows.push_back({std::string(family_name(f)), n, net.tensors.size(), tn_memory_bytes(net, Precision::Single),
                      tn_memory_bytes(net, Precision::Double)});
    }
  return rows;
}

inline constexpr const char* kMemoryCsvHeader = "kind,n,num_tensors,bytes_single,bytes_double";

inline void write_memory_csv(std::ostream& os, const std::vector<MemoryRow>& rows) {
  os << kMemoryCsvHeader << '\n';
  for (const auto& r : rows)
    os << r.family << ',' << r.n << ',' << r.num_tensors << ',' << r.bytes_single << ',' << r.bytes_double << '\n';
}

}  // namespace qcsim
