#pragma once

// OpenQASM 2.0 subset: one qreg, at most one creg, the gate names below, and
// trailing measurements. Anything else is rejected with a ParseError.
//
//   h x y z rx ry rz rzz cp (alias cu1) cx cz swap measure

#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qcsim/circuit.hpp"

namespace qcsim {

namespace qasm_detail {

struct Statement {
  std::string text;
  int line = 0;
};

inline std::vector<Statement> split_statements(std::string_view src) {
  std::vector<Statement> out;
  std::string cur;
  int line = 1;
  int start_line = 1;
  bool in_comment = false;
  for (std::size_t k = 0; k < src.size(); ++k) {
    char ch = src[k];
    if (ch == '\n') {
      ++line;
      in_comment = false;
      if (!cur.empty()) cur.push_back(' ');
      continue;
    }
    if (in_comment) continue;
    if (ch == '/' && k + 1 < src.size() && src[k + 1] == '/') {
      in_comment = true;
      continue;
    }
    if (ch == ';') {
      out.push_back({cur, start_line});
      cur.clear();
      continue;
    }
    if (cur.empty()) {
      if (std::isspace(static_cast<unsigned char>(ch))) continue;
      start_line = line;
    }
    cur.push_back(ch);
  }
  auto trailing = cur.find_first_not_of(" \t\r");
  if (trailing != std::string::npos) throw ParseError("missing ';' at end of input", start_line);
  return out;
}

/// Recursive-descent evaluator for angle expressions: numbers, pi, + - * /,
/// unary minus, parentheses.
class ExprParser {
 public:
  ExprParser(std::string_view text, int line) : s_(text), line_(line) {}

  double parse() {
    double v = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "' in expression");
    return v;
  }

 private:
  double expr() {
    double v = term();
    for (;;) {
      skip_ws();
      if (eat('+')) v += term();
      else if (eat('-')) v -= term();
      else return v;
    }
  }
  double term() {
    double v = factor();
    for (;;) {
      skip_ws();
      if (eat('*')) v *= factor();
      else if (eat('/')) v /= factor();
      else return v;
    }
  }
  double factor() {
    skip_ws();
    if (eat('-')) return -factor();
    if (eat('+')) return factor();
    if (eat('(')) {
      double v = expr();
      skip_ws();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (s_.substr(pos_, 2) == "pi") {
      pos_ += 2;
      return std::numbers::pi;
    }
    std::size_t begin = pos_;
    while (pos_ < s_.size() &&
           (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' || s_[pos_] == 'e' ||
            s_[pos_] == 'E' ||
            ((s_[pos_] == '-' || s_[pos_] == '+') && pos_ > begin && (s_[pos_ - 1] == 'e' || s_[pos_ - 1] == 'E'))))
      ++pos_;
    if (begin == pos_) fail("expected number");
    std::string num(s_.substr(begin, pos_ - begin));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(num, &used);
    } catch (const std::exception&) {
      fail("bad number '" + num + "'");
    }
    if (used != num.size()) fail("bad number '" + num + "'");
    return v;
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char ch) {
    if (pos_ < s_.size() && s_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_); }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_;
};

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

struct RegRef {
  std::string name;
  std::optional<int> index;  // nullopt = whole register
};

inline RegRef parse_reg_ref(std::string_view text, int line) {
  std::string t = trim(text);
  auto lb = t.find('[');
  if (lb == std::string::npos) {
    if (t.empty()) throw ParseError("expected register operand", line);
    for (char ch : t)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'))
        throw ParseError("bad register operand '" + t + "'", line);
    return {t, std::nullopt};
  }
  auto rb = t.find(']', lb);
  if (rb == std::string::npos || rb != t.size() - 1) throw ParseError("bad register operand '" + t + "'", line);
  std::string idx = trim(std::string_view(t).substr(lb + 1, rb - lb - 1));
  if (idx.empty()) throw ParseError("empty register index", line);
  for (char ch : idx)
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw ParseError("bad register index '" + idx + "'", line);
  return {trim(std::string_view(t).substr(0, lb)), std::stoi(idx)};
}

inline std::optional<GateKind> gate_from_qasm(std::string_view name) {
  if (name == "h") return GateKind::H;
  if (name == "x") return GateKind::X;
  if (name == "y") return GateKind::Y;
  if (name == "z") return GateKind::Z;
  if (name == "rx") return GateKind::RX;
  if (name == "ry") return GateKind::RY;
  if (name == "rz") return GateKind::RZ;
  if (name == "rzz") return GateKind::RZZ;
  if (name == "cp" || name == "cu1") return GateKind::CP;
  if (name == "cx") return GateKind::CNOT;
  if (name == "cz") return GateKind::CZ;
  if (name == "swap") return GateKind::SWAP;
  return std::nullopt;
}

inline std::string_view qasm_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::Y: return "y";
    case GateKind::Z: return "z";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::RZZ: return "rzz";
    case GateKind::CP: return "cp";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::SWAP: return "swap";
    case GateKind::Measure: return "measure";
  }
  return "?";
}

inline std::vector<std::string> split_commas(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= s.size(); ++k) {
    if (k == s.size() || s[k] == ',') {
      out.push_back(trim(s.substr(start, k - start)));
      start = k + 1;
    }
  }
  return out;
}

}  // namespace qasm_detail

inline Circuit parse_qasm(std::string_view text) {
  using namespace qasm_detail;
  const auto stmts = split_statements(text);

  std::optional<Circuit> circuit;
  std::string qreg_name, creg_name;
  int creg_size = 0;
  bool saw_header = false;

  auto require_qreg = [&](int line) {
    if (!circuit) throw ParseError("gate before qreg declaration", line);
  };
  auto qubit_index = [&](const RegRef& r, int line) {
    if (r.name != qreg_name) throw ParseError("unknown quantum register '" + r.name + "'", line);
    if (!r.index) throw ParseError("whole-register gate operands are not supported", line);
    if (*r.index >= circuit->num_qubits())
      throw ParseError("register width mismatch: " + r.name + "[" + std::to_string(*r.index) +
                           "] exceeds declared width " + std::to_string(circuit->num_qubits()),
                       line);
    return *r.index;
  };

  for (std::size_t k = 0; k < stmts.size(); ++k) {
    const auto& st = stmts[k];
    const std::string s = trim(st.text);
    const int line = st.line;
    if (s.empty()) continue;

    std::size_t name_end = 0;
    while (name_end < s.size() && (std::isalnum(static_cast<unsigned char>(s[name_end])) || s[name_end] == '_'))
      ++name_end;
    const std::string head = s.substr(0, name_end);
    const std::string rest = trim(std::string_view(s).substr(name_end));

    if (head == "OPENQASM") {
      if (saw_header || k != 0) throw ParseError("OPENQASM header must be the first statement", line);
      if (rest != "2.0") throw ParseError("only OPENQASM 2.0 is supported", line);
      saw_header = true;
      continue;
    }
    if (!saw_header) throw ParseError("missing OPENQASM 2.0 header", line);
    if (head == "include") {
      if (rest != "\"qelib1.inc\"") throw ParseError("unsupported include " + rest, line);
      continue;
    }
    if (head == "qreg" || head == "creg") {
      RegRef r = parse_reg_ref(rest, line);
      if (!r.index || *r.index < 1) throw ParseError(head + " needs a positive width", line);
      if (head == "qreg") {
        if (circuit) throw ParseError("exactly one qreg is supported", line);
        circuit.emplace(*r.index);
        qreg_name = r.name;
      } else {
        if (!creg_name.empty()) throw ParseError("at most one creg is supported", line);
        creg_name = r.name;
        creg_size = *r.index;
      }
      continue;
    }
    if (head == "measure") {
      require_qreg(line);
      auto arrow = rest.find("->");
      if (arrow == std::string::npos) throw ParseError("measure needs '->'", line);
      RegRef q = parse_reg_ref(std::string_view(rest).substr(0, arrow), line);
      RegRef c = parse_reg_ref(std::string_view(rest).substr(arrow + 2), line);
      if (creg_name.empty() || c.name != creg_name) throw ParseError("unknown classical register '" + c.name + "'", line);
      if (q.name != qreg_name) throw ParseError("unknown quantum register '" + q.name + "'", line);
      if (q.index.has_value() != c.index.has_value())
        throw ParseError("measure operands must both be indexed or both whole registers", line);
      if (!q.index) {
        if (creg_size != circuit->num_qubits())
          throw ParseError("register width mismatch between qreg and creg", line);
        for (int i = 0; i < circuit->num_qubits(); ++i) circuit->add(GateKind::Measure, {i});
      } else {
        if (*c.index >= creg_size) throw ParseError("register width mismatch: classical index out of range", line);
        circuit->add(GateKind::Measure, {qubit_index(q, line)});
      }
      continue;
    }

    auto kind = gate_from_qasm(head);
    if (!kind) throw ParseError("unsupported gate or statement '" + (head.empty() ? s : head) + "'", line);
    require_qreg(line);

    std::optional<double> angle;
    std::string operands = rest;
    if (!operands.empty() && operands.front() == '(') {
      int depth = 0;
      std::size_t close = std::string::npos;
      for (std::size_t p = 0; p < operands.size(); ++p) {
        if (operands[p] == '(') ++depth;
        if (operands[p] == ')' && --depth == 0) {
          close = p;
          break;
        }
      }
      if (close == std::string::npos) throw ParseError("unbalanced parentheses", line);
      auto params = split_commas(std::string_view(operands).substr(1, close - 1));
      if (params.size() != 1) throw ParseError(head + " takes exactly one parameter", line);
      angle = ExprParser(params[0], line).parse();
      operands = trim(std::string_view(operands).substr(close + 1));
    }
    if (is_parameterized(*kind) != angle.has_value())
      throw ParseError(head + (angle ? " takes no parameter" : " requires a parameter"), line);

    std::vector<int> qubits;
    for (const auto& arg : split_commas(operands)) qubits.push_back(qubit_index(parse_reg_ref(arg, line), line));
    if (qubits.size() != arity(*kind))
      throw ParseError(head + " expects " + std::to_string(arity(*kind)) + " operand(s)", line);
    try {
      circuit->add(*kind, qubits, angle);
    } catch (const ParameterError& e) {
      throw ParseError(e.what(), line);
    }
  }
  if (!circuit) throw ParseError("no qreg declaration", stmts.empty() ? 1 : stmts.back().line);
  return std::move(*circuit);
}

inline std::string emit_qasm(const Circuit& c) {
  using qasm_detail::qasm_name;
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  if (!c.name().empty()) out << "// " << c.name() << "\n";
  out << "qreg q[" << c.num_qubits() << "];\n";
  bool has_measure = false;
  for (const auto& g : c.ops()) has_measure |= g.is_measure();
  if (has_measure) out << "creg c[" << c.num_qubits() << "];\n";

  char buf[64];
  for (const auto& g : c.ops()) {
    if (g.is_measure()) {
      out << "measure q[" << g.qubits[0] << "] -> c[" << g.qubits[0] << "];\n";
      continue;
    }
    out << qasm_name(g.kind);
    if (g.angle) {
      std::snprintf(buf, sizeof buf, "%.17g", *g.angle);
      out << "(" << buf << ")";
    }
    out << " ";
    for (std::size_t k = 0; k < g.qubits.size(); ++k) out << (k ? "," : "") << "q[" << g.qubits[k] << "]";
    out << ";\n";
  }
  return out.str();
}

}  // namespace qcsim
