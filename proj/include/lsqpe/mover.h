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
#include <optional>
#include <string>
#include <vector>

#include "lsqpe/circuit.h"
#include "lsqpe/pauli.h"
#include "lsqpe/sim.h"

namespace lsqpe {

/// True for rotations by pi/2, -pi/2 or pi (Clifford Pauli rotations).
bool is_clifford_rotation(const PauliRotation& r);

/// Pauli rotations whose product equals the gate up to a global phase.
/// Bases span `num_qubits`. Single-qubit diagonal gates must be dyadic.
std::vector<PauliRotation> gate_to_rotations(const Instruction& g, std::size_t num_qubits);

/// c^dag p c for a Clifford rotation c: p is unchanged when the bases
/// commute; otherwise it becomes i Q p (pi/2), -i Q p (-pi/2) or -p (pi).
PhasedPauli conjugate_by(const PauliRotation& c, const PhasedPauli& p);

/// Rewrites r so that r * c = c * r'. Signs fold into the angle.
PauliRotation move_past_rotation(const PauliRotation& c, const PauliRotation& r);

struct PauliMeasurement {
  PhasedPauli basis;  // Hermitian; outcome 0 is the +1 eigenspace
  std::uint32_t bit = 0;

  bool operator==(const PauliMeasurement&) const = default;
};

/// Measuring m after c equals measuring the returned basis before c. A
/// negative sign on the result means the recorded outcome is inverted.
PauliMeasurement move_past_measurement(const PauliRotation& c, const PauliMeasurement& m);

/// Accumulated Clifford C given as a product of Clifford rotations, kept as
/// the images C^dag X_q C and C^dag Z_q C (a Heisenberg-picture tableau).
class CliffordFrame {
 public:
  explicit CliffordFrame(std::size_t num_qubits);

  /// C <- c C, i.e. c acts after everything already in the frame.
  void append(const PauliRotation& c);
  /// C^dag p C.
  PhasedPauli conjugate(const PhasedPauli& p) const;
  bool is_identity() const;
  std::size_t num_qubits() const { return x_.size(); }

 private:
  std::vector<PhasedPauli> x_, z_;
};

enum class EventKind {
  Rotation,     // pi/4 rotation, executed
  Measurement,  // Pauli measurement into a classical bit
  Frame,        // conditioned Clifford rotation, tracked in software
};

struct ProgramEvent {
  EventKind kind = EventKind::Rotation;
  PauliRotation rotation;  // Rotation and Frame
  PhasedPauli basis;       // Measurement; always phase-positive
  std::uint32_t bit = 0;   // Measurement
  bool invert = false;     // Measurement: flip the observed outcome
  std::optional<std::uint32_t> condition;

  bool operator==(const ProgramEvent&) const = default;
};

/// pi/4 rotations and Pauli measurements with every unconditioned Clifford
/// moved past the end. Conditioned Cliffords stay in place as Frame events,
/// already expressed in the moved basis.
struct PauliRotationProgram {
  std::uint32_t num_qubits = 0;
  std::uint32_t num_bits = 0;
  std::vector<ProgramEvent> events;
  /// Clifford rotations in time order (never executed). Adjacent rotations
  /// about the same basis are merged.
  std::vector<PauliRotation> trailing_frame;
  /// Per classical bit: whether its last measurement reads inverted.
  std::vector<bool> inverted_bits;

  std::size_t rotation_count() const;
  std::size_t measurement_count() const;
  std::size_t frame_event_count() const;

  /// {"num_qubits", "num_bits", "events": [{"kind": "rot"|"meas"|"frame",
  /// "basis": "+XZ", "angle": "+pi/4", "bit", "invert", "cond"}],
  /// "trailing_frame": [...], "inverted_bits": [...]}
  std::string to_json() const;
  static PauliRotationProgram from_json(const std::string& text);

  bool operator==(const PauliRotationProgram&) const = default;
};

/// Number of pi/4 rotations compile() will emit: odd diagonal blocks after
/// collapse_tlike plus explicit pi/4 Pauli rotations.
std::size_t tlike_block_count(const LogicalCircuit& c);

/// Sweeps Cliffords to the end. Accepts X, Z, H, S, Sdg, T, Tdg, CNOT,
/// PhaseBlock, dyadic RZ/Phase, PauliRot by multiples of pi/4 and Measure,
/// each optionally conditioned. Throws std::invalid_argument otherwise.
PauliRotationProgram compile(const LogicalCircuit& c);

/// Exact outcome distribution of a compiled program. Frame events that fire
/// are composed into a per-branch frame through which later events are
/// conjugated before they act on the state.
OutcomeDistribution exact_distribution(const PauliRotationProgram& p, const SimOptions& opts = {});

/// Product of the event rotations followed by the trailing frame, for
/// measurement-free programs without conditions.
Eigen::MatrixXcd program_unitary(const PauliRotationProgram& p);

}  // namespace lsqpe
