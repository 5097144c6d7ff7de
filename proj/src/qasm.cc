// Copyright 2026 The lsqpe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lsqpe/qasm.h"

#include <fmt/format.h>

#include <cctype>
#include <cstdlib>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "lsqpe/qpe.h"

namespace lsqpe {

QasmError::QasmError(int line, int column, const std::string& message)
    : std::runtime_error(fmt::format("line {}, column {}: {}", line, column, message)),
      line_(line),
      column_(column) {}

namespace {

enum class Tok { Ident, Number, String, Symbol, Arrow, Eq, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, column = 1;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '/' && i + 1 < s.size() && s[i + 1] == '/') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) advance(1);
      t.kind = Tok::Ident;
    } else if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      char* end = nullptr;
      std::strtod(s.c_str() + i, &end);
      std::size_t n = static_cast<std::size_t>(end - (s.c_str() + i));
      if (n == 0) throw QasmError(line, col, fmt::format("malformed number"));
      advance(n);
      t.kind = Tok::Number;
    } else if (ch == '"') {
      advance(1);
      while (i < s.size() && s[i] != '"' && s[i] != '\n') advance(1);
      if (i >= s.size() || s[i] != '"') throw QasmError(t.line, t.column, "unterminated string");
      advance(1);
      t.kind = Tok::String;
    } else if (ch == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      advance(2);
      t.kind = Tok::Arrow;
    } else if (ch == '=' && i + 1 < s.size() && s[i + 1] == '=') {
      advance(2);
      t.kind = Tok::Eq;
    } else if (std::string_view("[](),;+-*/").find(ch) != std::string_view::npos) {
      advance(1);
      t.kind = Tok::Symbol;
    } else {
      throw QasmError(line, col, fmt::format("unexpected character '{}'", ch));
    }
    t.text = s.substr(start, i - start);
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

struct Register {
  std::uint32_t offset = 0, size = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(tokenize(text)) {}

  LogicalCircuit run() {
    if (peek().kind == Tok::Ident && peek().text == "OPENQASM") {
      next();
      const Token& v = expect(Tok::Number, "version number");
      if (v.text != "2.0" && v.text != "2") throw error(v, "only OPENQASM 2.0 is supported");
      expect_symbol(";");
    }
    while (peek().kind != Tok::End) statement();
    circuit_.validate();
    return std::move(circuit_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }

  static QasmError error(const Token& t, const std::string& msg) { return QasmError(t.line, t.column, msg); }

  static std::string describe(const Token& t) {
    return t.kind == Tok::End ? std::string("end of input") : fmt::format("'{}'", t.text);
  }

  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw error(peek(), fmt::format("expected {}, found {}", what, describe(peek())));
    return next();
  }

  const Token& expect_symbol(const char* sym) {
    if (peek().kind != Tok::Symbol || peek().text != sym) {
      throw error(peek(), fmt::format("expected '{}', found {}", sym, describe(peek())));
    }
    return next();
  }

  bool accept_symbol(const char* sym) {
    if (peek().kind == Tok::Symbol && peek().text == sym) {
      next();
      return true;
    }
    return false;
  }

  std::uint32_t integer() {
    const Token& t = expect(Tok::Number, "integer");
    if (t.text.find_first_not_of("0123456789") != std::string::npos) throw error(t, "expected integer");
    return static_cast<std::uint32_t>(std::stoul(t.text));
  }

  void statement() {
    const Token& head = expect(Tok::Ident, "statement");
    if (head.text == "include") {
      expect(Tok::String, "file name");
      expect_symbol(";");
    } else if (head.text == "qreg" || head.text == "creg") {
      declare(head.text == "qreg");
    } else if (head.text == "if") {
      conditioned();
    } else {
      operation(head, std::nullopt);
    }
  }

  void declare(bool quantum) {
    const Token& name = expect(Tok::Ident, "register name");
    expect_symbol("[");
    std::uint32_t size = integer();
    expect_symbol("]");
    expect_symbol(";");
    if (size == 0) throw error(name, "register of size zero");
    if (qregs_.count(name.text) || cregs_.count(name.text)) {
      throw error(name, fmt::format("register '{}' redeclared", name.text));
    }
    auto& regs = quantum ? qregs_ : cregs_;
    std::uint32_t& total = quantum ? circuit_.num_qubits : circuit_.num_bits;
    regs[name.text] = {total, size};
    total += size;
  }

  // name[index] resolved against `regs`.
  std::uint32_t argument(const std::map<std::string, Register>& regs, const char* what) {
    const Token& name = expect(Tok::Ident, what);
    auto it = regs.find(name.text);
    if (it == regs.end()) throw error(name, fmt::format("unknown {} '{}'", what, name.text));
    if (peek().kind != Tok::Symbol || peek().text != "[") {
      throw error(peek(), fmt::format("whole-register argument '{}' is not supported", name.text));
    }
    next();
    const Token& idx_tok = peek();
    std::uint32_t idx = integer();
    expect_symbol("]");
    if (idx >= it->second.size) {
      throw error(idx_tok, fmt::format("index {} out of range for '{}[{}]'", idx, name.text, it->second.size));
    }
    return it->second.offset + idx;
  }

  void conditioned() {
    expect_symbol("(");
    const Token& name = expect(Tok::Ident, "classical register");
    auto it = cregs_.find(name.text);
    if (it == cregs_.end()) throw error(name, fmt::format("unknown classical register '{}'", name.text));
    std::uint32_t bit = it->second.offset;
    if (accept_symbol("[")) {
      const Token& idx_tok = peek();
      std::uint32_t idx = integer();
      expect_symbol("]");
      if (idx >= it->second.size) throw error(idx_tok, fmt::format("index {} out of range", idx));
      bit += idx;
    } else if (it->second.size != 1) {
      throw error(name, fmt::format("condition on multi-bit register '{}' is not supported", name.text));
    }
    expect(Tok::Eq, "'=='");
    const Token& value = peek();
    if (integer() != 1) throw error(value, "only conditions of the form == 1 are supported");
    expect_symbol(")");
    if (!written_.count(bit)) throw error(name, fmt::format("condition on bit {} before any measurement", bit));
    const Token& op = expect(Tok::Ident, "operation");
    if (op.text == "if") throw error(op, "nested conditions are not supported");
    operation(op, bit);
  }

  double expression() {
    double v = term();
    while (peek().kind == Tok::Symbol && (peek().text == "+" || peek().text == "-")) {
      bool plus = next().text == "+";
      double rhs = term();
      v = plus ? v + rhs : v - rhs;
    }
    return v;
  }

  double term() {
    double v = unary();
    while (peek().kind == Tok::Symbol && (peek().text == "*" || peek().text == "/")) {
      const Token& op = next();
      double rhs = unary();
      if (op.text == "/" && rhs == 0) throw error(op, "division by zero");
      v = op.text == "*" ? v * rhs : v / rhs;
    }
    return v;
  }

  double unary() {
    if (accept_symbol("-")) return -unary();
    if (accept_symbol("+")) return unary();
    const Token& t = peek();
    if (t.kind == Tok::Number) {
      next();
      return std::strtod(t.text.c_str(), nullptr);
    }
    if (t.kind == Tok::Ident && t.text == "pi") {
      next();
      return std::numbers::pi;
    }
    if (accept_symbol("(")) {
      double v = expression();
      expect_symbol(")");
      return v;
    }
    throw error(t, fmt::format("expected angle expression, found {}", describe(t)));
  }

  void operation(const Token& name, std::optional<std::uint32_t> condition) {
    static const std::map<std::string, GateKind> single = {
        {"x", GateKind::X}, {"z", GateKind::Z},   {"h", GateKind::H},  {"s", GateKind::S},
        {"sdg", GateKind::Sdg}, {"t", GateKind::T}, {"tdg", GateKind::Tdg}};
    Instruction ins;
    if (auto it = single.find(name.text); it != single.end()) {
      ins = Instruction::gate(it->second, argument(qregs_, "quantum register"));
    } else if (name.text == "cx") {
      std::uint32_t a = argument(qregs_, "quantum register");
      expect_symbol(",");
      const Token& second = peek();
      std::uint32_t b = argument(qregs_, "quantum register");
      if (a == b) throw error(second, "cx control and target coincide");
      ins = Instruction::cnot(a, b);
    } else if (name.text == "rz") {
      expect_symbol("(");
      double theta = expression();
      expect_symbol(")");
      ins = Instruction::rz(argument(qregs_, "quantum register"), Angle::from_radians(theta));
    } else if (name.text == "measure") {
      std::uint32_t q = argument(qregs_, "quantum register");
      expect(Tok::Arrow, "'->'");
      std::uint32_t bit = argument(cregs_, "classical register");
      ins = Instruction::measure(q, bit);
    } else if (name.text == "reset") {
      ins = Instruction::reset(argument(qregs_, "quantum register"));
    } else {
      throw error(name, fmt::format("unsupported gate '{}'", name.text));
    }
    expect_symbol(";");
    if (ins.kind == GateKind::Measure) written_.insert(ins.bit);
    if (condition) ins = ins.conditioned_on(*condition);
    circuit_.push(std::move(ins));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  LogicalCircuit circuit_;
  std::map<std::string, Register> qregs_, cregs_;
  std::set<std::uint32_t> written_;
};

std::string angle_expr(const Angle& a) {
  if (!a.is_dyadic()) return fmt::format("{}", a.value());
  static constexpr const char* names[] = {"0", "pi/4", "pi/2", "3*pi/4", "pi", "-3*pi/4", "-pi/2", "-pi/4"};
  return names[a.eighths_value()];
}

std::string q(std::uint32_t i) { return fmt::format("q[{}]", i); }

}  // namespace

LogicalCircuit parse_qasm(const std::string& text) { return Parser(text).run(); }

std::string emit_qasm(const LogicalCircuit& c) {
  c.validate();
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  if (c.num_qubits > 0) out += fmt::format("qreg q[{}];\n", c.num_qubits);
  for (std::uint32_t b = 0; b < c.num_bits; ++b) out += fmt::format("creg c{}[1];\n", b);
  for (const auto& op : c.ops) {
    if (op.condition) out += fmt::format("if(c{}==1) ", *op.condition);
    switch (op.kind) {
      case GateKind::X: out += "x " + q(op.qubits[0]); break;
      case GateKind::Z: out += "z " + q(op.qubits[0]); break;
      case GateKind::H: out += "h " + q(op.qubits[0]); break;
      case GateKind::S: out += "s " + q(op.qubits[0]); break;
      case GateKind::Sdg: out += "sdg " + q(op.qubits[0]); break;
      case GateKind::T: out += "t " + q(op.qubits[0]); break;
      case GateKind::Tdg: out += "tdg " + q(op.qubits[0]); break;
      case GateKind::CNOT: out += "cx " + q(op.qubits[0]) + "," + q(op.qubits[1]); break;
      case GateKind::RZ: out += "rz(" + angle_expr(op.angle) + ") " + q(op.qubits[0]); break;
      case GateKind::Measure: out += fmt::format("measure {} -> c{}[0]", q(op.qubits[0]), op.bit); break;
      case GateKind::Reset: out += "reset " + q(op.qubits[0]); break;
      default:
        throw std::invalid_argument(
            fmt::format("cannot emit {} as QASM; synthesize it or convert it to rz first", gate_name(op.kind)));
    }
    out += ";\n";
  }
  return out;
}

LogicalCircuit phases_to_rz(const LogicalCircuit& c) {
  LogicalCircuit lowered = lower_two_qubit_rotations(c);
  for (auto& op : lowered.ops) {
    if (op.kind == GateKind::Phase) {
      auto cond = op.condition;
      op = Instruction::rz(op.qubits[0], op.angle);
      op.condition = cond;
    } else if (op.kind == GateKind::PhaseBlock) {
      auto cond = op.condition;
      op = Instruction::rz(op.qubits[0], Angle::eighths(op.phase8));
      op.condition = cond;
    }
  }
  return lowered;
}

}  // namespace lsqpe
