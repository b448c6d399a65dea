#pragma once

// Circuit intermediate representation and the gate library.
//
// Conventions shared by every module:
//  * Qubit 0 is the least-significant bit of a basis-state index.
//  * Two-qubit matrices are indexed by 2*b(qubits[0]) + b(qubits[1]), so the
//    textbook CNOT matrix has qubits[0] as control.
//  * Rotations use the half-angle convention, RZ(t) = diag(e^{-it/2}, e^{it/2}).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcsim/error.hpp"

namespace qcsim {

using Complex = std::complex<double>;

enum class GateKind { H, X, Y, Z, RX, RY, RZ, RZZ, CP, CNOT, CZ, SWAP, Measure };

inline constexpr std::array<GateKind, 13> kAllGateKinds = {
    GateKind::H,   GateKind::X,    GateKind::Y,  GateKind::Z,    GateKind::RX,
    GateKind::RY,  GateKind::RZ,   GateKind::RZZ, GateKind::CP,  GateKind::CNOT,
    GateKind::CZ,  GateKind::SWAP, GateKind::Measure};

constexpr std::string_view gate_name(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::RZZ: return "RZZ";
    case GateKind::CP: return "CP";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
    case GateKind::SWAP: return "SWAP";
    case GateKind::Measure: return "Measure";
  }
  return "?";
}

constexpr std::size_t arity(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RZZ:
    case GateKind::CP:
    case GateKind::CNOT:
    case GateKind::CZ:
    case GateKind::SWAP:
      return 2;
    default:
      return 1;
  }
}

constexpr bool is_parameterized(GateKind kind) noexcept {
  switch (kind) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RZZ:
    case GateKind::CP:
      return true;
    default:
      return false;
  }
}

/// Dense 2x2 or 4x4 complex matrix, row-major.
struct UnitaryMatrix {
  std::size_t dim = 2;
  std::vector<Complex> entries;

  Complex operator()(std::size_t row, std::size_t col) const { return entries[row * dim + col]; }
  Complex& operator()(std::size_t row, std::size_t col) { return entries[row * dim + col]; }

  UnitaryMatrix adjoint() const {
    UnitaryMatrix out{dim, std::vector<Complex>(entries.size())};
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  /// Largest |(U^dagger U - I)_{ij}|.
  double unitarity_error() const {
    double worst = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        Complex acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) acc += std::conj((*this)(k, r)) * (*this)(k, c);
        if (r == c) acc -= 1.0;
        worst = std::max(worst, std::abs(acc));
      }
    }
    return worst;
  }
};

inline UnitaryMatrix matrix_of(GateKind kind, std::optional<double> angle = std::nullopt) {
  if (kind == GateKind::Measure) throw ParameterError("Measure has no matrix");
  if (is_parameterized(kind) && !angle)
    throw ParameterError(std::string(gate_name(kind)) + " requires an angle");
  if (!is_parameterized(kind) && angle)
    throw ParameterError(std::string(gate_name(kind)) + " takes no angle");

  const Complex i{0.0, 1.0};
  const double r2 = 1.0 / std::sqrt(2.0);
  const double t = angle.value_or(0.0);
  const double c = std::cos(t / 2), s = std::sin(t / 2);
  const Complex em = std::exp(-i * (t / 2)), ep = std::exp(i * (t / 2));

  switch (kind) {
    case GateKind::H: return {2, {r2, r2, r2, -r2}};
    case GateKind::X: return {2, {0, 1, 1, 0}};
    case GateKind::Y: return {2, {0, -i, i, 0}};
    case GateKind::Z: return {2, {1, 0, 0, -1}};
    case GateKind::RX: return {2, {c, -i * s, -i * s, c}};
    case GateKind::RY: return {2, {c, -s, s, c}};
    case GateKind::RZ: return {2, {em, 0, 0, ep}};
    case GateKind::RZZ:
      return {4, {em, 0, 0, 0,  //
                  0, ep, 0, 0,  //
                  0, 0, ep, 0,  //
                  0, 0, 0, em}};
    case GateKind::CP:
      return {4, {1, 0, 0, 0,  //
                  0, 1, 0, 0,  //
                  0, 0, 1, 0,  //
                  0, 0, 0, std::exp(i * t)}};
    case GateKind::CNOT:
      return {4, {1, 0, 0, 0,  //
                  0, 1, 0, 0,  //
                  0, 0, 0, 1,  //
                  0, 0, 1, 0}};
    case GateKind::CZ:
      return {4, {1, 0, 0, 0,  //
                  0, 1, 0, 0,  //
                  0, 0, 1, 0,  //
                  0, 0, 0, -1}};
    case GateKind::SWAP:
      return {4, {1, 0, 0, 0,  //
                  0, 0, 1, 0,  //
                  0, 1, 0, 0,  //
                  0, 0, 0, 1}};
    case GateKind::Measure: break;
  }
  throw ParameterError("unknown gate kind");
}

struct GateOp {
  GateKind kind = GateKind::H;
  std::vector<int> qubits;  // controlled kinds: {control, target}
  std::optional<double> angle;

  bool is_multi_qubit() const noexcept { return qubits.size() >= 2; }
  bool is_measure() const noexcept { return kind == GateKind::Measure; }
  UnitaryMatrix matrix() const { return matrix_of(kind, angle); }

  friend bool operator==(const GateOp&, const GateOp&) = default;
};

/// Ordered gate list on an N-qubit register. Measure ops may only form a
/// trailing suffix.
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_qubits, std::string name = {}) : num_qubits_(num_qubits), name_(std::move(name)) {
    if (num_qubits < 1) throw ParameterError("circuit needs at least one qubit");
  }

  int num_qubits() const noexcept { return num_qubits_; }
  const std::string& name() const noexcept { return name_; }
  const std::vector<GateOp>& ops() const noexcept { return ops_; }
  const std::map<std::string, std::string>& params() const noexcept { return params_; }

  void set_name(std::string name) { name_ = std::move(name); }
  void set_param(const std::string& key, std::string value) { params_[key] = std::move(value); }

  Circuit& add(GateOp op) {
    if (op.qubits.size() != arity(op.kind))
      throw ParameterError(std::string(gate_name(op.kind)) + " expects " + std::to_string(arity(op.kind)) +
                           " qubit(s)");
    if (is_parameterized(op.kind) != op.angle.has_value())
      throw ParameterError(std::string(gate_name(op.kind)) +
                           (op.angle ? " takes no angle" : " requires an angle"));
    for (int q : op.qubits)
      if (q < 0 || q >= num_qubits_)
        throw ParameterError("qubit index " + std::to_string(q) + " out of range for width " +
                             std::to_string(num_qubits_));
    if (op.qubits.size() == 2 && op.qubits[0] == op.qubits[1])
      throw ParameterError("gate qubits must be distinct");
    if (!op.is_measure() && !ops_.empty() && ops_.back().is_measure())
      throw ParameterError("Measure ops must form a trailing suffix");
    ops_.push_back(std::move(op));
    return *this;
  }

  Circuit& add(GateKind kind, std::vector<int> qubits, std::optional<double> angle = std::nullopt) {
    return add(GateOp{kind, std::move(qubits), angle});
  }

  /// Non-Measure op count.
  std::size_t gate_count() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(ops_.begin(), ops_.end(), [](const GateOp& g) { return !g.is_measure(); }));
  }

  std::size_t multi_qubit_count() const noexcept {
    return static_cast<std::size_t>(std::count_if(
        ops_.begin(), ops_.end(), [](const GateOp& g) { return !g.is_measure() && g.is_multi_qubit(); }));
  }

  /// Unitary part only.
  std::vector<GateOp> gates() const {
    std::vector<GateOp> out;
    out.reserve(ops_.size());
    for (const auto& g : ops_)
      if (!g.is_measure()) out.push_back(g);
    return out;
  }

  /// Structural equality: width, op kinds, qubits, and angles within tol.
  bool structurally_equal(const Circuit& other, double angle_tol = 1e-12) const {
    if (num_qubits_ != other.num_qubits_ || ops_.size() != other.ops_.size()) return false;
    for (std::size_t k = 0; k < ops_.size(); ++k) {
      const auto& a = ops_[k];
      const auto& b = other.ops_[k];
      if (a.kind != b.kind || a.qubits != b.qubits || a.angle.has_value() != b.angle.has_value()) return false;
      if (a.angle && std::abs(*a.angle - *b.angle) > angle_tol) return false;
    }
    return true;
  }

 private:
  int num_qubits_ = 1;
  std::string name_;
  std::vector<GateOp> ops_;
  std::map<std::string, std::string> params_;
};

/// Two-qubit Bell-pair circuit: H on qubit 0, CNOT(0 -> 1).
inline Circuit bell_circuit() {
  Circuit c(2, "bell");
  c.add(GateKind::H, {0});
  c.add(GateKind::CNOT, {0, 1});
  return c;
}

/// Renders basis index `index` as an N-character bitstring, qubit N-1 first.
inline std::string to_bitstring(std::uint64_t index, int num_qubits) {
  std::string s(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q)
    if ((index >> q) & 1ULL) s[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
  return s;
}

inline std::uint64_t from_bitstring(std::string_view bits) {
  if (bits.size() > 63) throw ParameterError("bitstring too long");
  std::uint64_t index = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1') throw ParameterError("bitstring must contain only 0 and 1");
    index = (index << 1) | static_cast<std::uint64_t>(ch == '1');
  }
  return index;
}

}  // namespace qcsim
