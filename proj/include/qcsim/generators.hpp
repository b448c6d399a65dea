#pragma once

// Parameterized benchmark circuits. Gate counts (Measure excluded) follow the
// closed forms below, with P, k, M = floor(kN), L, T defaulting to 1, 0.5,
// floor(N/2), 1, 1:
//
//   family            total gates                        multi-qubit gates
//   QAOA              3/2 P N(N-1) + 2N                  P N(N-1)
//   Random            expectation only                   k N floor(N/2) (expected)
//   QPE               N(N-1)/2 + 2N - 1 + floor((N-1)/2) (N-1)(N-2)/2 + N-1 + floor((N-1)/2)
//   QFT               N(N+1)/2 + floor(N/2)              (N^2-N)/2 + floor(N/2)
//   VQE               L(5N-1) + N                        L(N-1)
//   HamiltonianSim    3T(2N-1)                           T(N-1)
//   HiddenShift       3N + 2M + floor(N/2)               floor(N/2)
//   BernsteinVazirani 2N + M                             M
//
// QPE's multi-qubit count is the textbook construction's, N-2 below the
// commonly quoted (N^2-N)/2 + N-2 + floor((N-1)/2).

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcsim/circuit.hpp"

namespace qcsim {

enum class Family { QAOA, Random, QPE, QFT, VQE, HamiltonianSim, HiddenShift, BernsteinVazirani };

inline constexpr std::array<Family, 8> kAllFamilies = {
    Family::QAOA, Family::Random,         Family::QPE,         Family::QFT,
    Family::VQE,  Family::HamiltonianSim, Family::HiddenShift, Family::BernsteinVazirani};

constexpr std::string_view family_name(Family f) noexcept {
  switch (f) {
    case Family::QAOA: return "qaoa";
    case Family::Random: return "random";
    case Family::QPE: return "qpe";
    case Family::QFT: return "qft";
    case Family::VQE: return "vqe";
    case Family::HamiltonianSim: return "hamiltonian";
    case Family::HiddenShift: return "hiddenshift";
    case Family::BernsteinVazirani: return "bv";
  }
  return "?";
}

inline std::optional<Family> parse_family(std::string_view name) {
  for (Family f : kAllFamilies)
    if (family_name(f) == name) return f;
  if (name == "hamsim" || name == "hamiltonian_sim") return Family::HamiltonianSim;
  if (name == "hs" || name == "hidden_shift") return Family::HiddenShift;
  if (name == "bernstein_vazirani" || name == "bernsteinvazirani") return Family::BernsteinVazirani;
  return std::nullopt;
}

/// Generator parameters. Unset optionals take the family defaults; explicitly
/// set parameters that a family does not use are reported under the
/// "warning" key of the circuit's params map.
struct GeneratorSpec {
  Family family = Family::QFT;
  int n = 2;
  std::optional<int> p_layers;   // QAOA
  std::optional<double> k;       // Random, HiddenShift, BV
  std::optional<int> m;          // HiddenShift, BV; defaults to floor(kN)
  std::optional<int> l_layers;   // VQE
  std::optional<int> t_steps;    // HamiltonianSim
  std::optional<std::uint64_t> seed;  // Random, HiddenShift, BV
  /// HiddenShift/BV only: explicit secret, qubit N-1 (or the highest data
  /// qubit) first. Overrides M and the seed-drawn secret.
  std::optional<std::string> secret;
};

namespace gen_detail {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

/// Pairings of a round-robin tournament: every unordered pair appears exactly
/// once and pairs within a round are disjoint.
inline std::vector<std::vector<std::pair<int, int>>> round_robin(int n) {
  const int slots = n % 2 == 0 ? n : n + 1;  // slot n is a bye when n is odd
  std::vector<int> ring(static_cast<std::size_t>(slots));
  std::iota(ring.begin(), ring.end(), 0);
  std::vector<std::vector<std::pair<int, int>>> rounds;
  for (int r = 0; r < slots - 1; ++r) {
    std::vector<std::pair<int, int>> round;
    for (int i = 0; i < slots / 2; ++i) {
      int a = ring[static_cast<std::size_t>(i)];
      int b = ring[static_cast<std::size_t>(slots - 1 - i)];
      if (a >= n || b >= n) continue;
      round.emplace_back(std::min(a, b), std::max(a, b));
    }
    rounds.push_back(std::move(round));
    std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
  }
  return rounds;
}

/// Deterministic angle schedule for seedless families.
inline double schedule_angle(int index) {
  const double golden = 0.6180339887498949;
  double frac = std::fmod(golden * (index + 1), 1.0);
  return 2.0 * std::numbers::pi * frac;
}

inline std::vector<int> secret_positions(const GeneratorSpec& spec, int width, int ones, std::mt19937_64& rng,
                                         std::string& rendered) {
  std::vector<int> pos;
  if (spec.secret) {
    const auto& s = *spec.secret;
    if (static_cast<int>(s.size()) != width)
      throw ParameterError("secret must have " + std::to_string(width) + " bits");
    for (int i = 0; i < width; ++i) {
      char ch = s[static_cast<std::size_t>(width - 1 - i)];
      if (ch != '0' && ch != '1') throw ParameterError("secret must contain only 0 and 1");
      if (ch == '1') pos.push_back(i);
    }
  } else {
    if (ones < 0 || ones > width)
      throw ParameterError("M=" + std::to_string(ones) + " does not fit in " + std::to_string(width) + " bits");
    std::vector<int> all(static_cast<std::size_t>(width));
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    pos.assign(all.begin(), all.begin() + ones);
    std::sort(pos.begin(), pos.end());
  }
  rendered.assign(static_cast<std::size_t>(width), '0');
  for (int i : pos) rendered[static_cast<std::size_t>(width - 1 - i)] = '1';
  return pos;
}

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

/// Appends the QFT on qubits [0, n) (little-endian, trailing swaps).
inline void append_qft(Circuit& c, int n) {
  for (int j = n - 1; j >= 0; --j) {
    c.add(GateKind::H, {j});
    for (int k = j - 1; k >= 0; --k) c.add(GateKind::CP, {k, j}, std::numbers::pi / std::ldexp(1.0, j - k));
  }
  for (int i = 0; i < n / 2; ++i) c.add(GateKind::SWAP, {i, n - 1 - i});
}

inline void append_inverse_qft(Circuit& c, int n) {
  for (int i = n / 2 - 1; i >= 0; --i) c.add(GateKind::SWAP, {i, n - 1 - i});
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < j; ++k) c.add(GateKind::CP, {k, j}, -std::numbers::pi / std::ldexp(1.0, j - k));
    c.add(GateKind::H, {j});
  }
}

}  // namespace gen_detail

/// Phase encoded by QPE circuits with `counting` counting qubits: the integer
/// floor(2^counting / 3), which QPE reads out exactly.
inline std::uint64_t qpe_encoded_value(int counting) {
  return (counting >= 64 ? ~0ULL : (1ULL << counting)) / 3;
}

inline Circuit generate(const GeneratorSpec& spec) {
  using namespace gen_detail;
  const int n = spec.n;
  if (n < 2) throw ParameterError("generator needs n >= 2, got " + std::to_string(n));
  if (n > 62) throw ParameterError("generator supports n <= 62");

  const int P = spec.p_layers.value_or(1);
  const double k = spec.k.value_or(0.5);
  const int L = spec.l_layers.value_or(1);
  const int T = spec.t_steps.value_or(1);
  const std::uint64_t seed = spec.seed.value_or(kDefaultSeed);
  if (P < 1 || L < 1 || T < 1) throw ParameterError("layer/step counts must be >= 1");
  if (!(k >= 0.0 && k <= 1.0)) throw ParameterError("k must lie in [0, 1]");
  const int M = spec.m.value_or(static_cast<int>(std::floor(k * n)));

  Circuit c(n, std::string(family_name(spec.family)));
  std::vector<std::string> ignored;
  auto note_ignored = [&](bool set, const char* name) {
    if (set) ignored.emplace_back(name);
  };
  std::mt19937_64 rng(seed);

  switch (spec.family) {
    case Family::QAOA: {
      note_ignored(spec.k.has_value(), "k");
      note_ignored(spec.m.has_value(), "M");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.t_steps.has_value(), "T");
      note_ignored(spec.seed.has_value(), "seed");
      note_ignored(spec.secret.has_value(), "secret");
      c.set_param("P", std::to_string(P));
      for (int q = 0; q < n; ++q) c.add(GateKind::H, {q});
      const auto rounds = round_robin(n);
      for (int layer = 0; layer < P; ++layer) {
        const double gamma = std::numbers::pi / 4 * (layer + 1) / P;
        for (const auto& round : rounds) {
          for (auto [a, b] : round) {
            c.add(GateKind::CNOT, {a, b});
            c.add(GateKind::RZ, {b}, 2 * gamma);
            c.add(GateKind::CNOT, {a, b});
          }
        }
      }
      const double beta = std::numbers::pi / 8;
      for (int q = 0; q < n; ++q) c.add(GateKind::RX, {q}, 2 * beta);
      break;
    }

    case Family::QFT: {
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.k.has_value(), "k");
      note_ignored(spec.m.has_value(), "M");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.t_steps.has_value(), "T");
      note_ignored(spec.seed.has_value(), "seed");
      note_ignored(spec.secret.has_value(), "secret");
      append_qft(c, n);
      break;
    }

    case Family::QPE: {
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.k.has_value(), "k");
      note_ignored(spec.m.has_value(), "M");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.t_steps.has_value(), "T");
      note_ignored(spec.seed.has_value(), "seed");
      note_ignored(spec.secret.has_value(), "secret");
      const int counting = n - 1;
      const int eigen = n - 1;
      const std::uint64_t value = qpe_encoded_value(counting);
      const std::uint64_t modulus = 1ULL << counting;
      c.set_param("phase_numerator", std::to_string(value));
      c.set_param("phase_bits", std::to_string(counting));
      c.add(GateKind::X, {eigen});
      for (int q = 0; q < counting; ++q) c.add(GateKind::H, {q});
      for (int q = 0; q < counting; ++q) {
        // controlled-U^(2^q) with U = diag(1, e^{2 pi i value / 2^counting})
        const std::uint64_t reduced = (value << q) & (modulus - 1);
        const double theta = 2.0 * std::numbers::pi * std::ldexp(static_cast<double>(reduced), -counting);
        c.add(GateKind::CP, {q, eigen}, theta);
      }
      append_inverse_qft(c, counting);
      break;
    }

    case Family::VQE: {
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.k.has_value(), "k");
      note_ignored(spec.m.has_value(), "M");
      note_ignored(spec.t_steps.has_value(), "T");
      note_ignored(spec.seed.has_value(), "seed");
      note_ignored(spec.secret.has_value(), "secret");
      c.set_param("L", std::to_string(L));
      int angle_idx = 0;
      for (int q = 0; q < n; ++q) c.add(GateKind::RY, {q}, schedule_angle(angle_idx++));
      for (int layer = 0; layer < L; ++layer) {
        for (int q = 0; q < n; ++q) {
          c.add(GateKind::RY, {q}, schedule_angle(angle_idx++));
          c.add(GateKind::RZ, {q}, schedule_angle(angle_idx++));
        }
        for (int q = 0; q + 1 < n; ++q) c.add(GateKind::CNOT, {q, q + 1});
        for (int q = 0; q < n; ++q) {
          c.add(GateKind::RY, {q}, schedule_angle(angle_idx++));
          c.add(GateKind::RZ, {q}, schedule_angle(angle_idx++));
        }
      }
      break;
    }

    case Family::HamiltonianSim: {
      // Transverse-field Ising chain, one symmetric Trotter step per T:
      // half-step fields, ZZ couplings along the chain, half-step fields, and
      // an extra longitudinal kick on bulk sites (those with two couplings).
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.k.has_value(), "k");
      note_ignored(spec.m.has_value(), "M");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.seed.has_value(), "seed");
      note_ignored(spec.secret.has_value(), "secret");
      c.set_param("T", std::to_string(T));
      const double dt = 0.1, field_x = 1.0, field_z = 0.5, coupling = 1.0;
      for (int step = 0; step < T; ++step) {
        for (int q = 0; q < n; ++q) c.add(GateKind::RX, {q}, field_x * dt);
        for (int q = 0; q < n; ++q) c.add(GateKind::RZ, {q}, field_z * dt);
        for (int q = 0; q + 1 < n; ++q) c.add(GateKind::RZZ, {q, q + 1}, 2 * coupling * dt);
        for (int q = 0; q < n; ++q) c.add(GateKind::RZ, {q}, field_z * dt);
        for (int q = 0; q < n; ++q) c.add(GateKind::RX, {q}, field_x * dt);
        for (int q = 1; q + 1 < n; ++q) c.add(GateKind::RZ, {q}, coupling * dt);
      }
      break;
    }

    case Family::BernsteinVazirani: {
      // Qubits 0..N-2 carry the secret, qubit N-1 is the phase-kickback
      // ancilla. Readout is the marginal over the data qubits.
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.t_steps.has_value(), "T");
      const int data = n - 1;
      const int anc = n - 1;
      std::string rendered;
      const auto ones = secret_positions(spec, data, M, rng, rendered);
      c.set_param("k", fmt_double(k));
      c.set_param("M", std::to_string(ones.size()));
      c.set_param("seed", std::to_string(seed));
      c.set_param("secret", rendered);
      c.add(GateKind::X, {anc});
      for (int q = 0; q < n; ++q) c.add(GateKind::H, {q});
      for (int q : ones) c.add(GateKind::CNOT, {q, anc});
      for (int q = 0; q < data; ++q) c.add(GateKind::H, {q});
      break;
    }

    case Family::HiddenShift: {
      // Maiorana-McFarland inner-product bent function f(x) = sum x_{2i} x_{2i+1};
      // the shifted oracle g(x) = f(x ^ s) is X^s . CZ-layer . X^s.
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.t_steps.has_value(), "T");
      std::string rendered;
      const auto ones = secret_positions(spec, n, M, rng, rendered);
      c.set_param("k", fmt_double(k));
      c.set_param("M", std::to_string(ones.size()));
      c.set_param("seed", std::to_string(seed));
      c.set_param("secret", rendered);
      for (int q = 0; q < n; ++q) c.add(GateKind::H, {q});
      for (int q : ones) c.add(GateKind::X, {q});
      for (int i = 0; 2 * i + 1 < n; ++i) c.add(GateKind::CZ, {2 * i, 2 * i + 1});
      for (int q : ones) c.add(GateKind::X, {q});
      for (int q = 0; q < n; ++q) c.add(GateKind::H, {q});
      // The dual-function oracle would sit between these two H layers.
      for (int q = 0; q < n; ++q) c.add(GateKind::H, {q});
      break;
    }

    case Family::Random: {
      note_ignored(spec.p_layers.has_value(), "P");
      note_ignored(spec.m.has_value(), "M");
      note_ignored(spec.l_layers.has_value(), "L");
      note_ignored(spec.t_steps.has_value(), "T");
      note_ignored(spec.secret.has_value(), "secret");
      c.set_param("k", fmt_double(k));
      c.set_param("seed", std::to_string(seed));
      constexpr std::array<GateKind, 3> two = {GateKind::CNOT, GateKind::CZ, GateKind::SWAP};
      constexpr std::array<GateKind, 5> one = {GateKind::H, GateKind::X, GateKind::RZ, GateKind::RX, GateKind::RY};
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::uniform_int_distribution<int> pick_two(0, 2), pick_one(0, 4);
      auto single = [&](int q) {
        GateKind g = one[static_cast<std::size_t>(pick_one(rng))];
        if (is_parameterized(g))
          c.add(g, {q}, 2.0 * std::numbers::pi * unit(rng));
        else
          c.add(g, {q});
      };
      std::vector<int> order(static_cast<std::size_t>(n));
      for (int layer = 0; layer < n; ++layer) {
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (int i = 0; i + 1 < n; i += 2) {
          int a = order[static_cast<std::size_t>(i)], b = order[static_cast<std::size_t>(i + 1)];
          if (unit(rng) < k) {
            c.add(two[static_cast<std::size_t>(pick_two(rng))], {a, b});
          } else {
            single(a);
            single(b);
          }
        }
        if (n % 2 == 1) single(order.back());
      }
      break;
    }
  }

  if (!ignored.empty()) {
    std::string msg = "ignored parameters:";
    for (const auto& p : ignored) msg += " " + p;
    c.set_param("warning", msg);
  }
  return c;
}

}  // namespace qcsim
