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
#include <vector>

#include "lsqpe/circuit.h"
#include "lsqpe/pauli.h"

namespace lsqpe {

struct PauliTerm {
  double coeff = 0;
  PhasedPauli basis;
};

/// H = sum_j c_j P_j over `num_qubits` data qubits.
struct Hamiltonian {
  std::uint32_t num_qubits = 0;
  std::vector<PauliTerm> terms;
  /// Data-register preparation, as X/Z/H/S... gates on data-relative qubit
  /// indices, applied before any controlled evolution.
  std::vector<Instruction> prep;

  /// Throws on empty term list, zero coefficients, repeated bases, bases of
  /// the wrong width or with a non-trivial phase.
  void validate() const;
};

/// Two-term hydrogen Hamiltonian c1 Z + c2 X with an X data preparation.
Hamiltonian h2_hamiltonian();

enum class TimeConvention {
  PiOverSum,      // t = pi / sum |c_j|, U = e^{iHt}
  InverseTwoSum,  // t = 1 / (2 sum |c_j|)
};

enum class QpeMode { Textbook, Iterative };

struct QpeSpec {
  QpeMode mode = QpeMode::Iterative;
  int bits = 3;
  int trotter_steps = 1;
  TimeConvention convention = TimeConvention::PiOverSum;
  /// Permit classically-conditioned corrections finer than pi/4. These are
  /// emitted as free-angle phase gates that need a synthesis pass.
  bool allow_fine_corrections = false;
};

double scale_time(const Hamiltonian& h, TimeConvention convention);

/// Directional second-order Trotter list for e^{-i Z (x) H t / 2}: one
/// forward pass of R_{Z P_j}(c_j t / 2s) and one reversed pass per step s,
/// with adjacent equal-basis rotations merged. Bases have the control as
/// letter 0 followed by the data letters.
std::vector<PauliRotation> trotter_rotation_list(const Hamiltonian& h, double t, int steps);

/// Appends rotations to `list`, merging with the tail when the bases match.
void append_merged(std::vector<PauliRotation>& list, const std::vector<PauliRotation>& more);

/// Iterative QPE. Qubit 0 is the ancilla, data qubits are 1..n. Bit x_k of
/// the phase 0.x_1...x_m is written to classical bit m - k, so bit 0 holds
/// the least significant digit.
LogicalCircuit build_iterative_qpe(const Hamiltonian& h, const QpeSpec& spec);

/// Textbook QPE. Ancillas are qubits 0..m-1, data qubits follow. Ancilla j
/// controls U^(2^(m-1-j)) and is measured into bit j, which matches the
/// bit order of the iterative circuit.
LogicalCircuit build_textbook_qpe(const Hamiltonian& h, const QpeSpec& spec);

LogicalCircuit build_qpe(const Hamiltonian& h, const QpeSpec& spec);

/// Rewrites every PauliRot as basis changes around a CNOT ladder and an RZ,
/// and every CPhase as phase gates around two CNOTs. Other instructions,
/// including classical conditions, pass through.
LogicalCircuit lower_two_qubit_rotations(const LogicalCircuit& c);

}  // namespace lsqpe
