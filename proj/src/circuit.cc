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

#include "lsqpe/circuit.h"

#include <set>
#include <sstream>
#include <stdexcept>

namespace lsqpe {

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::Z: return "Z";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "Tdg";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RZ: return "RZ";
    case GateKind::Phase: return "Phase";
    case GateKind::CPhase: return "CPhase";
    case GateKind::PauliRot: return "PauliRot";
    case GateKind::PhaseBlock: return "PhaseBlock";
    case GateKind::Measure: return "Measure";
    case GateKind::Reset: return "Reset";
  }
  return "?";
}

bool is_single_qubit_diagonal(GateKind kind) {
  switch (kind) {
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
    case GateKind::T:
    case GateKind::Tdg:
    case GateKind::RZ:
    case GateKind::Phase:
    case GateKind::PhaseBlock:
      return true;
    default:
      return false;
  }
}

Instruction Instruction::gate(GateKind kind, std::uint32_t q) {
  Instruction op;
  op.kind = kind;
  op.qubits = {q};
  return op;
}

Instruction Instruction::cnot(std::uint32_t control, std::uint32_t target) {
  Instruction op;
  op.kind = GateKind::CNOT;
  op.qubits = {control, target};
  return op;
}

Instruction Instruction::rz(std::uint32_t q, Angle angle) {
  Instruction op = gate(GateKind::RZ, q);
  op.angle = angle;
  return op;
}

Instruction Instruction::phase(std::uint32_t q, Angle angle) {
  Instruction op = gate(GateKind::Phase, q);
  op.angle = angle;
  return op;
}

Instruction Instruction::cphase(std::uint32_t a, std::uint32_t b, Angle angle) {
  Instruction op;
  op.kind = GateKind::CPhase;
  op.qubits = {a, b};
  op.angle = angle;
  return op;
}

Instruction Instruction::pauli_rot(std::vector<std::uint32_t> qubits, PhasedPauli basis,
                                   Angle angle) {
  if (basis.size() != qubits.size()) {
    throw std::invalid_argument("rotation basis length does not match qubit list");
  }
  PauliRotation r = PauliRotation::make(basis, angle);
  Instruction op;
  op.kind = GateKind::PauliRot;
  op.qubits = std::move(qubits);
  op.basis = r.basis;
  op.angle = r.angle;
  return op;
}

Instruction Instruction::phase_block(std::uint32_t q, int phase8) {
  Instruction op = gate(GateKind::PhaseBlock, q);
  op.phase8 = ((phase8 % 8) + 8) % 8;
  return op;
}

Instruction Instruction::measure(std::uint32_t q, std::uint32_t bit) {
  Instruction op = gate(GateKind::Measure, q);
  op.bit = bit;
  return op;
}

Instruction Instruction::reset(std::uint32_t q) { return gate(GateKind::Reset, q); }

Instruction Instruction::conditioned_on(std::uint32_t b) const {
  Instruction op = *this;
  op.condition = b;
  return op;
}

std::optional<int> Instruction::diagonal_eighths() const {
  switch (kind) {
    case GateKind::Z: return 4;
    case GateKind::S: return 2;
    case GateKind::Sdg: return 6;
    case GateKind::T: return 1;
    case GateKind::Tdg: return 7;
    case GateKind::PhaseBlock: return phase8;
    case GateKind::RZ:
    case GateKind::Phase:
      if (angle.is_dyadic()) return angle.eighths_value();
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

std::string Instruction::str() const {
  std::ostringstream out;
  if (condition) out << "if(c" << *condition << ") ";
  out << gate_name(kind);
  switch (kind) {
    case GateKind::RZ:
    case GateKind::Phase:
    case GateKind::CPhase:
      out << "(" << angle.str() << ")";
      break;
    case GateKind::PauliRot:
      out << "[" << basis.str().substr(1) << "](" << angle.str() << ")";
      break;
    case GateKind::PhaseBlock:
      out << "(" << phase8 << ")";
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < qubits.size(); ++i) out << (i ? "," : " q") << qubits[i];
  if (kind == GateKind::Measure) out << " -> c" << bit;
  return out.str();
}

void LogicalCircuit::append(const LogicalCircuit& other) {
  if (other.num_qubits > num_qubits) num_qubits = other.num_qubits;
  if (other.num_bits > num_bits) num_bits = other.num_bits;
  ops.insert(ops.end(), other.ops.begin(), other.ops.end());
}

void LogicalCircuit::validate() const {
  std::set<std::uint32_t> written;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const Instruction& op = ops[i];
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("instruction " + std::to_string(i) + " (" + op.str() +
                                  "): " + why);
    };
    std::size_t arity = (op.kind == GateKind::CNOT || op.kind == GateKind::CPhase) ? 2 : 1;
    if (op.kind == GateKind::PauliRot) {
      arity = op.basis.size();
      if (arity == 0) fail("empty rotation basis");
      if (op.basis.phase() != 0) fail("rotation basis must have phase +1");
    }
    if (op.qubits.size() != arity) fail("wrong number of qubits");
    std::set<std::uint32_t> seen;
    for (auto q : op.qubits) {
      if (q >= num_qubits) fail("qubit out of range");
      if (!seen.insert(q).second) fail("repeated qubit");
    }
    if (op.condition) {
      if (*op.condition >= num_bits) fail("condition bit out of range");
      if (!written.contains(*op.condition)) fail("condition bit not yet measured");
    }
    if (op.kind == GateKind::Measure) {
      if (op.bit >= num_bits) fail("measurement bit out of range");
      written.insert(op.bit);
    }
  }
}

GateCounts LogicalCircuit::counts() const {
  GateCounts c;
  for (const auto& op : ops) {
    switch (op.kind) {
      case GateKind::X: ++c.x; break;
      case GateKind::Z: ++c.z; break;
      case GateKind::H: ++c.h; break;
      case GateKind::S:
      case GateKind::Sdg: ++c.s; break;
      case GateKind::T:
      case GateKind::Tdg: ++c.t; break;
      case GateKind::CNOT: ++c.cnot; break;
      case GateKind::Measure: ++c.measure; break;
      default: ++c.other; break;
    }
  }
  return c;
}

std::size_t LogicalCircuit::count(GateKind kind) const {
  std::size_t n = 0;
  for (const auto& op : ops) n += op.kind == kind;
  return n;
}

}  // namespace lsqpe
