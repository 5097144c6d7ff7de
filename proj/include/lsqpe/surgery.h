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
#include <string>
#include <vector>

#include "lsqpe/circuit.h"
#include "lsqpe/mover.h"

namespace lsqpe {

enum class Method { Direct, Moved };

std::string method_name(Method m);
/// "direct" or "moved"; throws std::invalid_argument otherwise.
Method parse_method(const std::string& text);

enum class SlotRole { Data, Routing, MagicState };

/// One (d+1) x (d+1) cell of the patch grid. Data slots hold a d x d patch.
struct PatchSlot {
  SlotRole role = SlotRole::Routing;
  int col = 0, row = 0;  // slot coordinates; row 0 is the top
  int x = 0, y = 0;      // top-left corner in data-qubit units
  int qubit = -1;        // logical qubit for data slots
};

/// Patch arrangement at code distance d. Direct: 2 x 2 slots on a
/// (2d+2) x (2d+2) grid, data along the bottom and routing on top. Moved:
/// 3 x 2 slots on a (3d+4) x (2d+2) grid with data at the bottom, the |T>
/// patch at the top right and routing elsewhere.
struct LayoutSpec {
  Method method = Method::Direct;
  int d = 3;
  int factories = 0;  // drawn around the top corners; at most 4

  /// Throws std::invalid_argument for d < 3 or factories outside [0, 4].
  static LayoutSpec make(Method method, int d, int factories = 0);
  void validate() const;

  int grid_width() const;
  int grid_height() const;
  std::vector<PatchSlot> slots() const;
  /// Logical qubits the layout can host.
  int data_capacity() const { return 2; }
  /// Data plus routing patches counted against the logical error budget.
  int budget_patches() const { return method == Method::Direct ? 4 : 6; }
};

std::int64_t physical_qubits(const LayoutSpec& layout);
/// Rounds between successive |T> consumptions: 4d+5 direct, d+1 moved.
int consumption_interval(const LayoutSpec& layout);
/// Extra nearest-neighbour links for twist-based measurements (4d).
/// Throws std::invalid_argument on a direct layout.
int extra_connectivity(const LayoutSpec& layout);

enum class SurgeryOp {
  PauliX,
  PauliZ,
  Hadamard,
  S,
  CNOT,
  TLike,             // worst case, S correction included
  TLikeNoCorrection,
  MeasureZ,
  PrepareZ,
  YPrep,
  Rotation,          // moved pi/4 rotation
  JointMeasurement,  // moved Pauli measurement
  FrameUpdate,       // moved conditioned Clifford
};

std::string op_name(SurgeryOp op);

struct Stage {
  std::string label;
  std::int64_t rounds = 0;
  bool correction = false;  // only needed for half of the outcomes
};

/// Stage breakdown per protocol. Half-integer terms round up.
/// Throws std::invalid_argument for ops illegal under `method`.
std::vector<Stage> op_stages(SurgeryOp op, int d, Method method);
std::int64_t op_rounds(SurgeryOp op, int d, Method method);

struct SurgeryStep {
  SurgeryOp op = SurgeryOp::PauliX;
  std::vector<std::uint32_t> qubits;  // logical qubits touched
  std::string basis;                  // Pauli letters over `qubits` (moved)
  std::vector<Stage> stages;
  int auxiliary_patches = 0;          // ancilla / resource patches in use
  std::int64_t rounds = 0;            // sum of stages
};

enum class CostMode { WorstCase, Expected };

struct SurgerySchedule {
  LayoutSpec layout;
  std::vector<SurgeryStep> steps;
  std::int64_t total_rounds = 0;  // worst case
  int peak_patches = 0;

  /// Expected mode charges correction stages with probability 1/2.
  double rounds(CostMode mode) const;
  std::string to_json() const;
};

/// Per-category operation counts, for schedules built without a circuit.
struct OperationCounts {
  std::int64_t x = 0, z = 0, h = 0, s = 0, cnot = 0, tlike = 0, measure = 0;
  std::int64_t rotations = 0, measurements = 0;  // moved
};

/// Category counts of the direct schedule of `c` (T-like blocks after
/// collapse, S blocks, Z blocks counted as z).
OperationCounts direct_counts(const LogicalCircuit& c);

/// Direct schedule. Diagonal runs are collapsed first: odd runs cost one
/// T-like step, runs of 2 or 6 eighths one S step, 4 eighths a free Z.
/// Accepts X, Z, H, S, Sdg, T, Tdg, CNOT, PhaseBlock, dyadic RZ/Phase,
/// Measure and Reset, conditioned or not. Conditioned steps are charged as
/// if always executed.
SurgerySchedule schedule(const LogicalCircuit& c, const LayoutSpec& layout);
/// Moved schedule: each rotation d+1, each measurement d, frame events 0.
SurgerySchedule schedule(const PauliRotationProgram& p, const LayoutSpec& layout);
/// Schedule of an unordered operation list given by counts; steps carry no
/// qubits. Direct uses x..measure, moved uses rotations and measurements.
SurgerySchedule schedule(const OperationCounts& counts, const LayoutSpec& layout);
/// Total of schedule(counts, layout) without materializing the steps.
std::int64_t total_rounds(const OperationCounts& counts, const LayoutSpec& layout);

}  // namespace lsqpe
