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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lsqpe/pauli.h"

namespace lsqpe {

enum class GateKind : std::uint8_t {
  X,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  CNOT,        // qubits = {control, target}
  RZ,          // exp(-i Z theta / 2)
  Phase,       // diag(1, e^{i theta})
  CPhase,      // diag(1, 1, 1, e^{i theta})
  PauliRot,    // exp(-i P theta / 2), P over the listed qubits
  PhaseBlock,  // diag(1, e^{i pi k / 4}) for k = phase8; Z^a S^b T^c
  Measure,     // Z-basis measurement into `bit`
  Reset,       // unconditional reset to |0>
};

std::string gate_name(GateKind kind);

/// True for gates whose matrix is diagonal on a single qubit.
bool is_single_qubit_diagonal(GateKind kind);

struct Instruction {
  GateKind kind = GateKind::X;
  std::vector<std::uint32_t> qubits;
  Angle angle;             // RZ, Phase, CPhase, PauliRot
  PhasedPauli basis;       // PauliRot; letter i acts on qubits[i]
  int phase8 = 0;          // PhaseBlock
  std::uint32_t bit = 0;   // Measure
  /// Applied only when this classical bit reads 1.
  std::optional<std::uint32_t> condition;

  static Instruction gate(GateKind kind, std::uint32_t q);
  static Instruction cnot(std::uint32_t control, std::uint32_t target);
  static Instruction rz(std::uint32_t q, Angle angle);
  static Instruction phase(std::uint32_t q, Angle angle);
  static Instruction cphase(std::uint32_t a, std::uint32_t b, Angle angle);
  static Instruction pauli_rot(std::vector<std::uint32_t> qubits, PhasedPauli basis, Angle angle);
  static Instruction phase_block(std::uint32_t q, int phase8);
  static Instruction measure(std::uint32_t q, std::uint32_t bit);
  static Instruction reset(std::uint32_t q);

  Instruction conditioned_on(std::uint32_t bit) const;

  /// Diagonal phase in eighths of a turn for single-qubit diagonal gates
  /// with a dyadic angle (Z = 4, S = 2, T = 1, ...). Empty otherwise.
  std::optional<int> diagonal_eighths() const;

  std::string str() const;

  bool operator==(const Instruction&) const = default;
};

struct GateCounts {
  std::size_t x = 0, z = 0, h = 0, s = 0, t = 0, cnot = 0, measure = 0, other = 0;
  std::size_t total() const { return x + z + h + s + t + cnot + measure + other; }
};

class LogicalCircuit {
 public:
  LogicalCircuit() = default;
  LogicalCircuit(std::uint32_t num_qubits, std::uint32_t num_bits)
      : num_qubits(num_qubits), num_bits(num_bits) {}

  std::uint32_t num_qubits = 0;
  std::uint32_t num_bits = 0;
  std::vector<Instruction> ops;

  void push(Instruction op) { ops.push_back(std::move(op)); }
  void append(const LogicalCircuit& other);

  /// Throws std::invalid_argument on out-of-range qubits, repeated qubits,
  /// or a condition on a bit that no earlier measurement wrote.
  void validate() const;

  /// Category counts; conditioned gates count like unconditioned ones.
  GateCounts counts() const;
  std::size_t count(GateKind kind) const;

  bool operator==(const LogicalCircuit&) const = default;
};

}  // namespace lsqpe
