#pragma once

// Dense state-vector simulation. A gate touches the amplitudes in groups
// selected by its qubits' bit patterns: pairs (bit q = 0/1) for one-qubit
// gates and quadruples for two-qubit gates, ordered by the matrix index
// 2*b(qubits[0]) + b(qubits[1]). Every group is replaced by matrix * group.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <random>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "qcsim/circuit.hpp"

namespace qcsim {

enum class Precision { Single, Double };

constexpr std::string_view precision_name(Precision p) noexcept {
  return p == Precision::Single ? "single" : "double";
}

inline constexpr int kDefaultMaxQubits = 30;

/// Capacity guard in qubits; QCSIM_MAX_QUBITS overrides the default.
inline int max_statevector_qubits() {
  if (const char* env = std::getenv("QCSIM_MAX_QUBITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 62) return static_cast<int>(v);
  }
  return kDefaultMaxQubits;
}

/// 2^n amplitudes at 8 bytes (complex-64) or 16 bytes (complex-128).
constexpr std::uint64_t sv_memory_bytes(int n, Precision p) {
  return (std::uint64_t{1} << n) * (p == Precision::Single ? 8u : 16u);
}

template <typename Real>
constexpr Precision precision_of() {
  static_assert(std::is_same_v<Real, float> || std::is_same_v<Real, double>);
  return std::is_same_v<Real, float> ? Precision::Single : Precision::Double;
}

template <typename Real>
class StateVector {
 public:
  using Amplitude = std::complex<Real>;

  /// |0...0> on n qubits.
  static StateVector zero(int n, int max_qubits = max_statevector_qubits()) {
    if (n < 1) throw ParameterError("state vector needs at least one qubit");
    if (n > max_qubits) {
      const auto bytes = sv_memory_bytes(n, precision_of<Real>());
      throw CapacityError("state vector of " + std::to_string(n) + " qubits needs " + std::to_string(bytes) +
                              " bytes (2^" + std::to_string(n) + " x " +
                              std::to_string(sizeof(Amplitude)) + "), over the " + std::to_string(max_qubits) +
                              "-qubit budget",
                          bytes);
    }
    StateVector sv;
    sv.num_qubits_ = n;
    sv.amps_.assign(std::size_t{1} << n, Amplitude{0});
    sv.amps_[0] = Amplitude{1};
    return sv;
  }

  int num_qubits() const noexcept { return num_qubits_; }
  std::span<const Amplitude> amplitudes() const noexcept { return amps_; }
  std::span<Amplitude> amplitudes() noexcept { return amps_; }
  Amplitude operator[](std::size_t i) const { return amps_[i]; }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(std::complex<double>(a));
    return s;
  }

  void apply(const GateOp& g) {
    if (g.is_measure()) throw UnsupportedError("Measure cannot be applied to a state vector; sample instead");
    for (int q : g.qubits)
      if (q < 0 || q >= num_qubits_) throw ParameterError("gate qubit out of range");
    apply_matrix(g.matrix(), g.qubits);
  }

  /// Applies a 2x2 or 4x4 matrix to the listed qubits.
  void apply_matrix(const UnitaryMatrix& u, const std::vector<int>& qubits) {
    if (u.dim == 2 && qubits.size() == 1) {
      apply_1q(u, qubits[0]);
    } else if (u.dim == 4 && qubits.size() == 2) {
      apply_2q(u, qubits[0], qubits[1]);
    } else {
      throw ParameterError("matrix dimension does not match qubit count");
    }
  }

 private:
  void apply_1q(const UnitaryMatrix& u, int q) {
    const Amplitude m00(u(0, 0)), m01(u(0, 1)), m10(u(1, 0)), m11(u(1, 1));
    const std::size_t stride = std::size_t{1} << q;
    const std::size_t size = amps_.size();
    for (std::size_t base = 0; base < size; base += 2 * stride) {
      for (std::size_t off = 0; off < stride; ++off) {
        const std::size_t i0 = base + off, i1 = i0 + stride;
        const Amplitude a0 = amps_[i0], a1 = amps_[i1];
        amps_[i0] = m00 * a0 + m01 * a1;
        amps_[i1] = m10 * a0 + m11 * a1;
      }
    }
  }

  void apply_2q(const UnitaryMatrix& u, int qa, int qb) {
    Amplitude m[4][4];
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m[r][c] = Amplitude(u(static_cast<std::size_t>(r), static_cast<std::size_t>(c)));
    const std::size_t bit_a = std::size_t{1} << qa, bit_b = std::size_t{1} << qb;
    const int lo = std::min(qa, qb), hi = std::max(qa, qb);
    const std::size_t groups = amps_.size() >> 2;
    for (std::size_t j = 0; j < groups; ++j) {
      // insert zero bits at positions lo then hi
      std::size_t base = j;
      base = ((base >> lo) << (lo + 1)) | (base & ((std::size_t{1} << lo) - 1));
      base = ((base >> hi) << (hi + 1)) | (base & ((std::size_t{1} << hi) - 1));
      const std::size_t idx[4] = {base, base | bit_b, base | bit_a, base | bit_a | bit_b};
      Amplitude in[4];
      for (int k = 0; k < 4; ++k) in[k] = amps_[idx[k]];
      for (int r = 0; r < 4; ++r) {
        Amplitude acc{0};
        for (int c = 0; c < 4; ++c) acc += m[r][c] * in[c];
        amps_[idx[r]] = acc;
      }
    }
  }

  int num_qubits_ = 0;
  std::vector<Amplitude> amps_;
};

/// Starts from |0...0> and applies every non-Measure op in order.
template <typename Real = double>
StateVector<Real> run(const Circuit& c, int max_qubits = max_statevector_qubits()) {
  auto sv = StateVector<Real>::zero(c.num_qubits(), max_qubits);
  for (const auto& g : c.ops()) {
    if (g.is_measure()) break;
    sv.apply(g);
  }
  return sv;
}

/// Dense probability vector over basis indices (little-endian).
struct OutputDistribution {
  int num_qubits = 0;
  std::vector<double> probs;

  double total() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
  }

  double probability(std::string_view bits) const { return probs.at(from_bitstring(bits)); }

  /// Entries with probability above `threshold`, keyed by bitstring.
  std::map<std::string, double> to_map(double threshold = 1e-12) const {
    std::map<std::string, double> out;
    for (std::size_t i = 0; i < probs.size(); ++i)
      if (probs[i] > threshold) out[to_bitstring(i, num_qubits)] = probs[i];
    return out;
  }

  /// Marginal over qubits [0, width).
  OutputDistribution marginal_low(int width) const {
    OutputDistribution m{width, std::vector<double>(std::size_t{1} << width, 0.0)};
    const std::size_t mask = (std::size_t{1} << width) - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) m.probs[i & mask] += probs[i];
    return m;
  }
};

template <typename Real>
OutputDistribution distribution(const StateVector<Real>& sv) {
  OutputDistribution d{sv.num_qubits(), {}};
  d.probs.reserve(sv.amplitudes().size());
  for (const auto& a : sv.amplitudes()) d.probs.push_back(std::norm(std::complex<double>(a)));
  return d;
}

/// Multinomial draw of `shots` outcomes; identical seeds give identical counts.
inline std::map<std::string, std::uint64_t> sample(const OutputDistribution& dist, std::uint64_t shots,
                                                   std::uint64_t seed) {
  if (shots < 1) throw ParameterError("shots must be >= 1");
  std::vector<double> cumulative(dist.probs.size());
  double run_sum = 0.0;
  for (std::size_t i = 0; i < dist.probs.size(); ++i) cumulative[i] = (run_sum += dist.probs[i]);
  std::mt19937_64 rng(seed);
  std::map<std::string, std::uint64_t> counts;
  for (std::uint64_t s = 0; s < shots; ++s) {
    // 53 random bits scaled onto [0, total)
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * run_sum;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= cumulative.size()) idx = cumulative.size() - 1;
    ++counts[to_bitstring(idx, dist.num_qubits)];
  }
  return counts;
}

template <typename Real>
std::map<std::string, std::uint64_t> sample(const StateVector<Real>& sv, std::uint64_t shots, std::uint64_t seed) {
  return sample(distribution(sv), shots, seed);
}

/// Runs the circuit at the requested precision and returns its distribution.
inline OutputDistribution simulate_distribution(const Circuit& c, Precision p,
                                                int max_qubits = max_statevector_qubits()) {
  if (p == Precision::Single) return distribution(run<float>(c, max_qubits));
  return distribution(run<double>(c, max_qubits));
}

}  // namespace qcsim
