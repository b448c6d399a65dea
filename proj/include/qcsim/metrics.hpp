#pragma once

// Topological circuit metrics. All of them look at the unitary part only;
// Measure ops are skipped. Gates of arity >= 2 count as entangling gates.
//
//   PC = sum_i deg(q_i) / (N (N-1))          distinct-neighbour degree
//   CD = n_ed / n_e                          n_ed: longest multi-qubit chain
//   E  = n_e / n_g
//   P  = clamp((n_g / d - 1) / (N - 1), 0, 1)  d: ASAP depth
//   EV = ln(sum_i (n_g2(q_i) - mean)^2 + 1) / N

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "qcsim/circuit.hpp"

namespace qcsim {

struct InteractionGraph {
  int num_qubits = 0;
  std::map<std::pair<int, int>, int> edge_multiplicity;  // keys ordered (lo, hi)

  std::size_t num_edges() const noexcept { return edge_multiplicity.size(); }

  std::vector<int> degrees() const {
    std::vector<int> deg(static_cast<std::size_t>(num_qubits), 0);
    for (const auto& [edge, mult] : edge_multiplicity) {
      ++deg[static_cast<std::size_t>(edge.first)];
      ++deg[static_cast<std::size_t>(edge.second)];
    }
    return deg;
  }

  bool has_edge(int a, int b) const { return edge_multiplicity.count({std::min(a, b), std::max(a, b)}) > 0; }
};

inline InteractionGraph interaction_graph(const Circuit& c) {
  InteractionGraph g;
  g.num_qubits = c.num_qubits();
  for (const auto& op : c.ops()) {
    if (op.is_measure() || !op.is_multi_qubit()) continue;
    for (std::size_t a = 0; a < op.qubits.size(); ++a)
      for (std::size_t b = a + 1; b < op.qubits.size(); ++b) {
        int lo = std::min(op.qubits[a], op.qubits[b]), hi = std::max(op.qubits[a], op.qubits[b]);
        ++g.edge_multiplicity[{lo, hi}];
      }
  }
  return g;
}

inline double program_communication(const Circuit& c) {
  const int n = c.num_qubits();
  if (n < 2) throw UndefinedMetricError("program communication needs at least 2 qubits");
  double sum = 0.0;
  for (int d : interaction_graph(c).degrees()) sum += d;
  return sum / (static_cast<double>(n) * (n - 1));
}

/// Number of multi-qubit gates on the longest chain of multi-qubit gates in
/// which consecutive members share a qubit.
inline std::size_t longest_multi_qubit_chain(const Circuit& c) {
  std::vector<std::size_t> chain_at(static_cast<std::size_t>(c.num_qubits()), 0);
  std::size_t best = 0;
  for (const auto& op : c.ops()) {
    if (op.is_measure() || !op.is_multi_qubit()) continue;
    std::size_t len = 0;
    for (int q : op.qubits) len = std::max(len, chain_at[static_cast<std::size_t>(q)]);
    ++len;
    for (int q : op.qubits) chain_at[static_cast<std::size_t>(q)] = len;
    best = std::max(best, len);
  }
  return best;
}

inline double critical_depth(const Circuit& c) {
  const std::size_t n_e = c.multi_qubit_count();
  if (n_e == 0) throw UndefinedMetricError("critical depth needs at least one multi-qubit gate");
  return static_cast<double>(longest_multi_qubit_chain(c)) / static_cast<double>(n_e);
}

inline double entanglement_ratio(const Circuit& c) {
  const std::size_t n_g = c.gate_count();
  if (n_g == 0) throw UndefinedMetricError("entanglement ratio needs at least one gate");
  return static_cast<double>(c.multi_qubit_count()) / static_cast<double>(n_g);
}

/// ASAP layering: each gate lands one layer after the latest gate sharing any
/// of its qubits.
inline std::size_t asap_depth(const Circuit& c) {
  std::vector<std::size_t> layer_at(static_cast<std::size_t>(c.num_qubits()), 0);
  std::size_t depth = 0;
  for (const auto& op : c.ops()) {
    if (op.is_measure()) continue;
    std::size_t layer = 0;
    for (int q : op.qubits) layer = std::max(layer, layer_at[static_cast<std::size_t>(q)]);
    ++layer;
    for (int q : op.qubits) layer_at[static_cast<std::size_t>(q)] = layer;
    depth = std::max(depth, layer);
  }
  return depth;
}

inline double parallelism(const Circuit& c) {
  const int n = c.num_qubits();
  if (n < 2) throw UndefinedMetricError("parallelism needs at least 2 qubits");
  const std::size_t n_g = c.gate_count();
  if (n_g == 0) throw UndefinedMetricError("parallelism needs at least one gate");
  const double d = static_cast<double>(asap_depth(c));
  const double raw = (static_cast<double>(n_g) / d - 1.0) / (n - 1);
  return std::clamp(raw, 0.0, 1.0);
}

inline std::vector<int> multi_qubit_gates_per_qubit(const Circuit& c) {
  std::vector<int> counts(static_cast<std::size_t>(c.num_qubits()), 0);
  for (const auto& op : c.ops())
    if (!op.is_measure() && op.is_multi_qubit())
      for (int q : op.qubits) ++counts[static_cast<std::size_t>(q)];
  return counts;
}

inline double entanglement_variance(const Circuit& c) {
  const auto counts = multi_qubit_gates_per_qubit(c);
  const double n = static_cast<double>(counts.size());
  double mean = 0.0;
  for (int v : counts) mean += v;
  mean /= n;
  double ss = 0.0;
  for (int v : counts) ss += (v - mean) * (v - mean);
  return std::log(ss + 1.0) / n;
}

/// Multi-qubit gate count with back-to-back repeats on the same qubit set
/// collapsed: a gate is not counted when, for each of its qubits, the most
/// recent multi-qubit gate was one acting on exactly the same qubits.
inline std::size_t effective_multi_qubit_count(const Circuit& c) {
  std::vector<long> last(static_cast<std::size_t>(c.num_qubits()), -1);
  std::vector<std::set<int>> supports;
  std::size_t count = 0;
  for (const auto& op : c.ops()) {
    if (op.is_measure() || !op.is_multi_qubit()) continue;
    std::set<int> support(op.qubits.begin(), op.qubits.end());
    long prev = last[static_cast<std::size_t>(op.qubits[0])];
    bool repeat = prev >= 0 && supports[static_cast<std::size_t>(prev)] == support;
    for (int q : op.qubits) repeat = repeat && last[static_cast<std::size_t>(q)] == prev;
    if (!repeat) ++count;
    const long id = static_cast<long>(supports.size());
    supports.push_back(std::move(support));
    for (int q : op.qubits) last[static_cast<std::size_t>(q)] = id;
  }
  return count;
}

struct MetricsReport {
  std::optional<double> program_communication;
  std::optional<double> critical_depth;
  std::optional<double> entanglement_ratio;
  std::optional<double> parallelism;
  std::optional<double> entanglement_variance;
  /// Entanglement ratio with repeated same-pair gates counted once.
  std::optional<double> effective_entanglement_ratio;
  std::size_t n_gates = 0;
  std::size_t n_two_qubit = 0;
  std::size_t depth = 0;
  int num_qubits = 0;
  std::map<std::string, std::string> absent_reasons;

  bool complete() const noexcept {
    return program_communication && critical_depth && entanglement_ratio && parallelism && entanglement_variance;
  }
};

inline MetricsReport compute_all(const Circuit& c) {
  MetricsReport r;
  r.n_gates = c.gate_count();
  r.n_two_qubit = c.multi_qubit_count();
  r.depth = asap_depth(c);
  r.num_qubits = c.num_qubits();

  auto capture = [&](std::optional<double>& slot, const char* key, auto&& fn) {
    try {
      slot = fn(c);
    } catch (const UndefinedMetricError& e) {
      slot.reset();
      r.absent_reasons[key] = e.what();
    }
  };
  capture(r.program_communication, "program_communication", [](const Circuit& x) { return program_communication(x); });
  capture(r.critical_depth, "critical_depth", [](const Circuit& x) { return critical_depth(x); });
  capture(r.entanglement_ratio, "entanglement_ratio", [](const Circuit& x) { return entanglement_ratio(x); });
  capture(r.parallelism, "parallelism", [](const Circuit& x) { return parallelism(x); });
  if (r.n_gates == 0) {
    // Nothing to spread: report as absent alongside the other metrics.
    r.absent_reasons["entanglement_variance"] = "empty circuit";
  } else {
    r.entanglement_variance = entanglement_variance(c);
  }
  if (r.n_gates > 0)
    r.effective_entanglement_ratio =
        static_cast<double>(effective_multi_qubit_count(c)) / static_cast<double>(r.n_gates);
  return r;
}

}  // namespace qcsim
