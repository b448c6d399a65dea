#pragma once

// Circuit -> tensor network conversion, sampled greedy pathfinding, pairwise
// contraction, and index slicing.
//
// Wire tensors: every qubit starts as the rank-1 tensor [1, 0]. A one-qubit
// gate U becomes a rank-2 tensor (in, out) with T[i][o] = U[o][i]; a
// two-qubit gate becomes a rank-4 tensor (in0, in1, out0, out1) with
// T[i0][i1][o0][o1] = U[2*o0+o1][2*i0+i1]. Closing a qubit on bit b attaches
// the basis vector e_b to its final wire.
//
// Plans use single-assignment ids: inputs are 0..T-1 and step s creates id
// T+s. Cost of a step is the product of the dimensions of the union of both
// operands' labels.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcsim/circuit.hpp"
#include "qcsim/statevector.hpp"
#include "qcsim/tensor.hpp"

namespace qcsim {

struct TensorNetwork {
  int num_qubits = 0;
  std::vector<Tensor> tensors;
  /// Final wire label per qubit (index = qubit). Empty for closed networks.
  std::vector<Label> open_labels;
  std::map<Label, int> label_dims;
  /// Indices of the tensors that close each qubit (closed networks only).
  std::vector<std::size_t> closing_tensors;

  /// Every non-open label sits on exactly two tensors, open labels on one.
  void validate() const {
    std::map<Label, int> uses;
    for (const auto& t : tensors)
      for (Label l : t.labels) ++uses[l];
    std::set<Label> open(open_labels.begin(), open_labels.end());
    for (const auto& [l, n] : uses) {
      const int want = open.count(l) ? 1 : 2;
      if (n != want)
        throw StructuralError("label " + std::to_string(l) + " appears " + std::to_string(n) + " times, expected " +
                              std::to_string(want));
    }
    for (Label l : open_labels)
      if (!uses.count(l)) throw StructuralError("open label " + std::to_string(l) + " is not on any tensor");
  }
};

/// Converts the unitary part of a circuit. With a bitstring (qubit N-1 first),
/// every output wire is closed and the network evaluates to <b|C|0...0>.
inline TensorNetwork circuit_to_network(const Circuit& c, std::optional<std::string> bitstring = std::nullopt) {
  const int n = c.num_qubits();
  TensorNetwork net;
  net.num_qubits = n;
  Label next = 0;
  std::vector<Label> wire(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) {
    wire[static_cast<std::size_t>(q)] = next;
    net.label_dims[next] = 2;
    net.tensors.emplace_back(std::vector<Label>{next}, std::vector<int>{2}, std::vector<Complex>{1.0, 0.0});
    ++next;
  }

  bool measured = false;
  for (const auto& g : c.ops()) {
    if (g.is_measure()) {
      measured = true;
      continue;
    }
    if (measured) throw UnsupportedError("mid-circuit Measure is not supported");
    const UnitaryMatrix u = g.matrix();
    if (g.qubits.size() == 1) {
      const auto q = static_cast<std::size_t>(g.qubits[0]);
      const Label in = wire[q], out = next++;
      net.label_dims[out] = 2;
      std::vector<Complex> d(4);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t o = 0; o < 2; ++o) d[i * 2 + o] = u(o, i);
      net.tensors.emplace_back(std::vector<Label>{in, out}, std::vector<int>{2, 2}, std::move(d));
      wire[q] = out;
    } else {
      const auto q0 = static_cast<std::size_t>(g.qubits[0]), q1 = static_cast<std::size_t>(g.qubits[1]);
      const Label in0 = wire[q0], in1 = wire[q1];
      const Label out0 = next++, out1 = next++;
      net.label_dims[out0] = net.label_dims[out1] = 2;
      std::vector<Complex> d(16);
      for (std::size_t i0 = 0; i0 < 2; ++i0)
        for (std::size_t i1 = 0; i1 < 2; ++i1)
          for (std::size_t o0 = 0; o0 < 2; ++o0)
            for (std::size_t o1 = 0; o1 < 2; ++o1) d[((i0 * 2 + i1) * 2 + o0) * 2 + o1] = u(2 * o0 + o1, 2 * i0 + i1);
      net.tensors.emplace_back(std::vector<Label>{in0, in1, out0, out1}, std::vector<int>{2, 2, 2, 2}, std::move(d));
      wire[q0] = out0;
      wire[q1] = out1;
    }
  }

  if (!bitstring) {
    net.open_labels = wire;
    return net;
  }
  if (static_cast<int>(bitstring->size()) != n)
    throw ParameterError("bitstring length " + std::to_string(bitstring->size()) + " does not match " +
                         std::to_string(n) + " qubits");
  for (int q = 0; q < n; ++q) {
    const char ch = (*bitstring)[static_cast<std::size_t>(n - 1 - q)];
    if (ch != '0' && ch != '1') throw ParameterError("bitstring must contain only 0 and 1");
    const bool one = ch == '1';
    net.closing_tensors.push_back(net.tensors.size());
    net.tensors.emplace_back(std::vector<Label>{wire[static_cast<std::size_t>(q)]}, std::vector<int>{2},
                             std::vector<Complex>{one ? 0.0 : 1.0, one ? 1.0 : 0.0});
  }
  return net;
}

/// Re-targets a closed network at another bitstring by rewriting the closing
/// tensors in place.
inline void set_closing_bits(TensorNetwork& net, std::uint64_t index) {
  if (net.closing_tensors.size() != static_cast<std::size_t>(net.num_qubits))
    throw StructuralError("network is not closed");
  for (int q = 0; q < net.num_qubits; ++q) {
    auto& t = net.tensors[net.closing_tensors[static_cast<std::size_t>(q)]];
    const bool one = (index >> q) & 1ULL;
    t.data = {one ? 0.0 : 1.0, one ? 1.0 : 0.0};
  }
}

struct PathfinderConfig {
  int num_samples = 8;
  std::uint64_t seed = 0;
  /// Softmax temperature over log2 step costs; 0 is pure greedy.
  double greedy_noise = 1.0;
  /// Fold rank <= 2 tensors into a neighbour before the greedy search.
  bool absorb_low_rank = true;
};

struct ContractionPlan {
  std::size_t num_inputs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> steps;
  /// Per-slice cost when sliced_labels is non-empty.
  double est_flops = 0.0;
  std::uint64_t est_peak_elements = 0;
  std::vector<Label> sliced_labels;
  /// Set when fewer labels could be sliced than requested.
  bool slicing_shortfall = false;
  int best_sample = 0;

  std::uint64_t num_slices() const noexcept { return std::uint64_t{1} << sliced_labels.size(); }
  double total_flops() const noexcept { return est_flops * static_cast<double>(num_slices()); }
};

namespace tn_detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using LabelSet = std::vector<Label>;  // sorted

inline LabelSet sorted_labels(const Tensor& t, const std::set<Label>& removed) {
  LabelSet s;
  for (Label l : t.labels)
    if (!removed.count(l)) s.push_back(l);
  std::sort(s.begin(), s.end());
  return s;
}

inline LabelSet sym_diff(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool shares_label(const LabelSet& a, const LabelSet& b) {
  auto i = a.begin(), j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

struct Costs {
  std::map<Label, double> log2dim;

  double log2_size(const LabelSet& s) const {
    double v = 0.0;
    for (Label l : s) v += log2dim.at(l);
    return v;
  }
  double log2_union(const LabelSet& a, const LabelSet& b) const {
    double v = log2_size(a);
    for (Label l : b)
      if (!std::binary_search(a.begin(), a.end(), l)) v += log2dim.at(l);
    return v;
  }
};

inline Costs costs_of(const TensorNetwork& net) {
  Costs c;
  for (const auto& [l, d] : net.label_dims) c.log2dim[l] = std::log2(static_cast<double>(d));
  for (const auto& t : net.tensors)
    for (std::size_t k = 0; k < t.labels.size(); ++k)
      c.log2dim.try_emplace(t.labels[k], std::log2(static_cast<double>(t.dims[k])));
  return c;
}

/// One greedy descent. `rng == nullptr` selects the cheapest candidate
/// (ties: lowest id pair).
inline ContractionPlan greedy_descent(const TensorNetwork& net, const Costs& costs, double noise,
                                      bool absorb_low_rank, std::mt19937_64* rng) {
  const std::set<Label> none;
  std::vector<LabelSet> sets;
  for (const auto& t : net.tensors) sets.push_back(sorted_labels(t, none));
  ContractionPlan plan;
  plan.num_inputs = sets.size();
  if (sets.empty()) return plan;

  std::set<std::size_t> active;
  std::unordered_map<Label, std::vector<std::size_t>> holders;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    active.insert(i);
    for (Label l : sets[i]) holders[l].push_back(i);
  }
  double flops = 0.0;
  double peak_log2 = 0.0;
  for (const auto& s : sets) peak_log2 = std::max(peak_log2, costs.log2_size(s));
  double peak_step_log2 = -1.0;

  auto neighbours = [&](std::size_t id) {
    std::set<std::size_t> out;
    for (Label l : sets[id])
      for (std::size_t h : holders[l])
        if (h != id && active.count(h)) out.insert(h);
    return out;
  };
  auto do_contract = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    flops += std::exp2(costs.log2_union(sets[a], sets[b]));
    LabelSet out = sym_diff(sets[a], sets[b]);
    peak_step_log2 = std::max(peak_step_log2, costs.log2_size(out));
    const std::size_t id = sets.size();
    for (Label l : out) holders[l].push_back(id);
    sets.push_back(std::move(out));
    active.erase(a);
    active.erase(b);
    active.insert(id);
    plan.steps.emplace_back(a, b);
    return id;
  };

  if (absorb_low_rank) {
    bool changed = true;
    while (changed && active.size() > 1) {
      changed = false;
      for (std::size_t id : active) {
        if (sets[id].size() > 2) continue;
        const auto nb = neighbours(id);
        if (nb.empty()) continue;
        std::size_t best = *nb.begin();
        double best_size = std::numeric_limits<double>::infinity();
        for (std::size_t other : nb) {
          double sz = costs.log2_size(sym_diff(sets[id], sets[other]));
          if (sz < best_size) {
            best_size = sz;
            best = other;
          }
        }
        // Never let absorption grow a tensor past its partner's rank.
        if (best_size > costs.log2_size(sets[best]) + 1e-9) continue;
        do_contract(id, best);
        changed = true;
        break;
      }
    }
  }

  // Candidate pairs sharing at least one label, keyed (lo, hi) -> log2 cost.
  std::map<std::pair<std::size_t, std::size_t>, double> cand;
  auto add_candidates = [&](std::size_t id) {
    for (std::size_t other : neighbours(id)) {
      auto key = std::minmax(id, other);
      cand[{key.first, key.second}] = costs.log2_union(sets[id], sets[other]);
    }
  };
  for (std::size_t id : active) add_candidates(id);

  std::vector<std::pair<std::size_t, std::size_t>> keys;
  std::vector<double> weights;
  while (active.size() > 1) {
    std::pair<std::size_t, std::size_t> pick;
    if (cand.empty()) {
      // Disconnected pieces: outer product of the two smallest.
      std::vector<std::size_t> ids(active.begin(), active.end());
      std::stable_sort(ids.begin(), ids.end(), [&](std::size_t x, std::size_t y) {
        return costs.log2_size(sets[x]) < costs.log2_size(sets[y]);
      });
      pick = {std::min(ids[0], ids[1]), std::max(ids[0], ids[1])};
    } else {
      double lo = std::numeric_limits<double>::infinity();
      for (const auto& [k, v] : cand) lo = std::min(lo, v);
      if (rng == nullptr || noise <= 0.0) {
        for (const auto& [k, v] : cand)
          if (v == lo) {
            pick = k;
            break;
          }
      } else {
        keys.clear();
        weights.clear();
        for (const auto& [k, v] : cand) {
          keys.push_back(k);
          weights.push_back(std::exp(-(v - lo) / noise));
        }
        std::discrete_distribution<std::size_t> dist(weights.begin(), weights.end());
        pick = keys[dist(*rng)];
      }
    }
    for (auto it = cand.begin(); it != cand.end();) {
      if (it->first.first == pick.first || it->first.second == pick.first || it->first.first == pick.second ||
          it->first.second == pick.second)
        it = cand.erase(it);
      else
        ++it;
    }
    const std::size_t id = do_contract(pick.first, pick.second);
    add_candidates(id);
  }

  plan.est_flops = flops;
  plan.est_peak_elements = static_cast<std::uint64_t>(std::llround(std::exp2(std::max(peak_step_log2, 0.0))));
  if (plan.steps.empty())  // single input tensor
    plan.est_peak_elements = static_cast<std::uint64_t>(std::llround(std::exp2(peak_log2)));
  return plan;
}

}  // namespace tn_detail

/// Replays a plan on label sets with `sliced` labels removed. Returns
/// (flops, peak elements over step outputs).
inline std::pair<double, std::uint64_t> replay_cost(const TensorNetwork& net, const ContractionPlan& plan,
                                                    const std::vector<Label>& sliced = {}) {
  using namespace tn_detail;
  const std::set<Label> removed(sliced.begin(), sliced.end());
  const Costs costs = costs_of(net);
  std::vector<LabelSet> sets;
  for (const auto& t : net.tensors) sets.push_back(sorted_labels(t, removed));
  double flops = 0.0;
  double peak = -1.0;
  for (auto [a, b] : plan.steps) {
    if (a >= sets.size() || b >= sets.size()) throw StructuralError("plan step refers to an unknown tensor");
    flops += std::exp2(costs.log2_union(sets[a], sets[b]));
    LabelSet out = sym_diff(sets[a], sets[b]);
    peak = std::max(peak, costs.log2_size(out));
    sets.push_back(std::move(out));
  }
  if (plan.steps.empty()) {
    for (const auto& s : sets) peak = std::max(peak, costs.log2_size(s));
  }
  return {flops, static_cast<std::uint64_t>(std::llround(std::exp2(std::max(peak, 0.0))))};
}

/// Runs sample `index` of a pathfinding configuration. Sample 0 is the pure
/// greedy descent; sample i > 0 is randomized with its own seed derived from
/// (cfg.seed, i), so a sample's plan does not depend on num_samples.
inline ContractionPlan find_path_sample(const TensorNetwork& net, const PathfinderConfig& cfg, int index) {
  const auto costs = tn_detail::costs_of(net);
  if (index == 0 || cfg.greedy_noise <= 0.0)
    return tn_detail::greedy_descent(net, costs, 0.0, cfg.absorb_low_rank, nullptr);
  std::mt19937_64 rng(tn_detail::splitmix64(cfg.seed ^ tn_detail::splitmix64(static_cast<std::uint64_t>(index))));
  return tn_detail::greedy_descent(net, costs, cfg.greedy_noise, cfg.absorb_low_rank, &rng);
}

/// Lowest-FLOP plan over cfg.num_samples greedy descents (ties: lowest sample).
inline ContractionPlan find_path(const TensorNetwork& net, const PathfinderConfig& cfg) {
  if (cfg.num_samples < 1) throw ParameterError("num_samples must be >= 1");
  ContractionPlan best;
  for (int i = 0; i < cfg.num_samples; ++i) {
    auto p = find_path_sample(net, cfg, i);
    p.best_sample = i;
    if (i == 0 || p.est_flops < best.est_flops) best = std::move(p);
  }
  return best;
}

namespace tn_detail {

inline void check_plan(const TensorNetwork& net, const ContractionPlan& plan) {
  const std::size_t t = net.tensors.size();
  if (plan.num_inputs != t) throw StructuralError("plan was built for a different network");
  if (t > 0 && plan.steps.size() != t - 1)
    throw StructuralError("plan must have exactly T-1 steps, has " + std::to_string(plan.steps.size()));
  std::vector<bool> used(t + plan.steps.size(), false);
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    auto [a, b] = plan.steps[s];
    const std::size_t avail = t + s;
    if (a >= avail || b >= avail || a == b) throw StructuralError("plan step " + std::to_string(s) + " is invalid");
    if (used[a] || used[b]) throw StructuralError("plan step " + std::to_string(s) + " reuses a consumed tensor");
    used[a] = used[b] = true;
  }
}

inline Tensor execute(std::vector<Tensor> pool, const ContractionPlan& plan) {
  if (pool.empty()) return Tensor::scalar(1.0);
  pool.reserve(pool.size() + plan.steps.size());
  for (auto [a, b] : plan.steps) {
    Tensor out = contract_pair(pool[a], pool[b]);
    pool[a] = Tensor();
    pool[b] = Tensor();
    pool.push_back(std::move(out));
  }
  return std::move(pool.back());
}

}  // namespace tn_detail

/// Evaluates the network along the plan. Sliced plans go through
/// contract_sliced / contract_slice.
inline Tensor contract(const TensorNetwork& net, const ContractionPlan& plan) {
  if (!plan.sliced_labels.empty()) throw StructuralError("plan is sliced; use contract_sliced");
  tn_detail::check_plan(net, plan);
  return tn_detail::execute(net.tensors, plan);
}

/// Contracts the sub-network with every sliced label fixed to the bits of
/// `slice` (bit j of slice -> sliced_labels[j]).
inline Tensor contract_slice(const TensorNetwork& net, const ContractionPlan& plan, std::uint64_t slice) {
  tn_detail::check_plan(net, plan);
  if (slice >= plan.num_slices()) throw ParameterError("slice index out of range");
  std::vector<Tensor> pool = net.tensors;
  for (std::size_t j = 0; j < plan.sliced_labels.size(); ++j) {
    const int v = static_cast<int>((slice >> j) & 1ULL);
    for (auto& t : pool) t = fix_index(t, plan.sliced_labels[j], v);
  }
  return tn_detail::execute(std::move(pool), plan);
}

/// Sums every slice sequentially, in slice order.
inline Tensor contract_sliced(const TensorNetwork& net, const ContractionPlan& plan) {
  Tensor acc = contract_slice(net, plan, 0);
  for (std::uint64_t s = 1; s < plan.num_slices(); ++s) {
    Tensor part = contract_slice(net, plan, s);
    part = permute(part, acc.labels);
    for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += part.data[i];
  }
  return acc;
}

/// Greedily picks log2(target_slices) closed labels, each time the one whose
/// removal most lowers the per-slice peak (ties: lower per-slice FLOPs, then
/// lower label). Open labels are never sliced.
inline ContractionPlan choose_slices(const TensorNetwork& net, const ContractionPlan& plan,
                                     std::uint64_t target_slices) {
  if (target_slices < 1 || (target_slices & (target_slices - 1)) != 0)
    throw ParameterError("target_slices must be a power of two >= 1");
  tn_detail::check_plan(net, plan);
  ContractionPlan out = plan;
  out.sliced_labels.clear();
  out.slicing_shortfall = false;
  int wanted = 0;
  while ((std::uint64_t{1} << wanted) < target_slices) ++wanted;

  const std::set<Label> open(net.open_labels.begin(), net.open_labels.end());
  std::set<Label> candidates;
  for (const auto& t : net.tensors)
    for (Label l : t.labels)
      if (!open.count(l)) candidates.insert(l);

  for (int round = 0; round < wanted; ++round) {
    if (candidates.empty()) {
      out.slicing_shortfall = true;
      break;
    }
    Label best = 0;
    double best_flops = 0.0;
    std::uint64_t best_peak = 0;
    bool first = true;
    for (Label l : candidates) {
      auto trial = out.sliced_labels;
      trial.push_back(l);
      auto [f, p] = replay_cost(net, plan, trial);
      if (first || p < best_peak || (p == best_peak && f < best_flops)) {
        best = l;
        best_flops = f;
        best_peak = p;
        first = false;
      }
    }
    out.sliced_labels.push_back(best);
    candidates.erase(best);
  }
  auto [f, p] = replay_cost(net, plan, out.sliced_labels);
  out.est_flops = f;
  out.est_peak_elements = p;
  return out;
}

/// <bitstring| C |0...0>.
inline Complex amplitude(const Circuit& c, const std::string& bitstring, const PathfinderConfig& cfg = {}) {
  const auto net = circuit_to_network(c, bitstring);
  const auto plan = find_path(net, cfg);
  return contract(net, plan).value();
}

inline constexpr int kDefaultReconstructGuard = 20;

/// Full output distribution by closing and contracting every bitstring. The
/// network structure is shared, so one plan serves all 2^N contractions; the
/// bitstring jobs are split across `workers` threads.
inline OutputDistribution reconstruct_distribution(const Circuit& c, const PathfinderConfig& cfg = {},
                                                   int max_qubits = kDefaultReconstructGuard, int workers = 1) {
  const int n = c.num_qubits();
  if (n > max_qubits)
    throw CapacityError("reconstructing " + std::to_string(n) + " qubits needs 2^" + std::to_string(n) +
                            " contractions, over the " + std::to_string(max_qubits) + "-qubit guard",
                        sv_memory_bytes(n, Precision::Double));
  const auto proto = circuit_to_network(c, std::string(static_cast<std::size_t>(n), '0'));
  const auto plan = find_path(proto, cfg);
  const std::uint64_t total = std::uint64_t{1} << n;
  OutputDistribution dist{n, std::vector<double>(total, 0.0)};

  auto job = [&](std::uint64_t begin, std::uint64_t end) {
    TensorNetwork net = proto;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      set_closing_bits(net, idx);
      dist.probs[idx] = std::norm(contract(net, plan).value());
    }
  };
  workers = std::max(1, std::min<int>(workers, static_cast<int>(total)));
  if (workers == 1) {
    job(0, total);
  } else {
    std::vector<std::thread> threads;
    const std::uint64_t chunk = (total + static_cast<std::uint64_t>(workers) - 1) / static_cast<std::uint64_t>(workers);
    for (int w = 0; w < workers; ++w) {
      const std::uint64_t b = static_cast<std::uint64_t>(w) * chunk, e = std::min(total, b + chunk);
      if (b < e) threads.emplace_back(job, b, e);
    }
    for (auto& t : threads) t.join();
  }
  return dist;
}

/// Amplitudes of an open network's result tensor, indexed little-endian.
inline std::vector<Complex> open_result_to_state(const TensorNetwork& net, const Tensor& result) {
  std::vector<Label> order(net.open_labels.rbegin(), net.open_labels.rend());  // qubit N-1 slowest
  return permute(result, order).data;
}

/// Sum over tensors of elements x bytes per element (8 single, 16 double).
inline std::uint64_t tn_memory_bytes(const TensorNetwork& net, Precision p = Precision::Single) {
  std::uint64_t elems = 0;
  for (const auto& t : net.tensors) elems += t.size();
  return elems * (p == Precision::Single ? 8u : 16u);
}

}  // namespace qcsim
