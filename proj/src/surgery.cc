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

#include "lsqpe/surgery.h"

#include <algorithm>
#include <json.hpp>
#include <stdexcept>

#include "lsqpe/synthesis.h"

namespace lsqpe {

namespace {

std::int64_t half_up(int d) { return (d + 1) / 2; }  // ceil(d/2)

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

std::string method_name(Method m) { return m == Method::Direct ? "direct" : "moved"; }

Method parse_method(const std::string& text) {
  if (text == "direct") return Method::Direct;
  if (text == "moved") return Method::Moved;
  throw std::invalid_argument("unknown method '" + text + "' (expected direct or moved)");
}

LayoutSpec LayoutSpec::make(Method method, int d, int factories) {
  LayoutSpec l{method, d, factories};
  l.validate();
  return l;
}

void LayoutSpec::validate() const {
  require(d >= 3, "code distance must be at least 3");
  require(factories >= 0 && factories <= 4, "at most four factories fit around the layout");
}

int LayoutSpec::grid_width() const { return method == Method::Direct ? 2 * d + 2 : 3 * d + 4; }
int LayoutSpec::grid_height() const { return 2 * d + 2; }

std::vector<PatchSlot> LayoutSpec::slots() const {
  std::vector<PatchSlot> out;
  const int cols = method == Method::Direct ? 2 : 3;
  const int x0 = method == Method::Direct ? 0 : 1;
  for (int row = 0; row < 2; ++row) {
    for (int col = 0; col < cols; ++col) {
      PatchSlot s;
      s.col = col;
      s.row = row;
      s.x = x0 + col * (d + 1);
      s.y = row * (d + 1);
      if (row == 1 && col < 2) {
        s.role = SlotRole::Data;
        s.qubit = col;
      } else if (method == Method::Moved && row == 0 && col == 2) {
        s.role = SlotRole::MagicState;
      }
      out.push_back(s);
    }
  }
  return out;
}

std::int64_t physical_qubits(const LayoutSpec& layout) {
  layout.validate();
  return 2LL * layout.grid_width() * layout.grid_height();
}

int consumption_interval(const LayoutSpec& layout) {
  layout.validate();
  return layout.method == Method::Direct ? 4 * layout.d + 5 : layout.d + 1;
}

int extra_connectivity(const LayoutSpec& layout) {
  layout.validate();
  require(layout.method == Method::Moved, "extra connectivity is defined for the moved layout only");
  return 4 * layout.d;
}

std::string op_name(SurgeryOp op) {
  switch (op) {
    case SurgeryOp::PauliX: return "x";
    case SurgeryOp::PauliZ: return "z";
    case SurgeryOp::Hadamard: return "h";
    case SurgeryOp::S: return "s";
    case SurgeryOp::CNOT: return "cnot";
    case SurgeryOp::TLike: return "tlike";
    case SurgeryOp::TLikeNoCorrection: return "tlike_no_correction";
    case SurgeryOp::MeasureZ: return "measure";
    case SurgeryOp::PrepareZ: return "prepare";
    case SurgeryOp::YPrep: return "y_prep";
    case SurgeryOp::Rotation: return "rotation";
    case SurgeryOp::JointMeasurement: return "joint_measurement";
    case SurgeryOp::FrameUpdate: return "frame";
  }
  return "?";
}

std::vector<Stage> op_stages(SurgeryOp op, int d, Method method) {
  require(d >= 1, "code distance must be positive");
  const bool direct = method == Method::Direct;
  auto direct_only = [&] {
    require(direct, op_name(op) + " is not an operation of the moved method");
  };
  auto moved_only = [&] {
    require(!direct, op_name(op) + " is not an operation of the direct method");
  };
  const std::vector<Stage> s_protocol = {
      {"prepare |Y> in routing space", half_up(d) + 2, false},
      {"joint Z(x)Y measurement", d, false},
      {"measure |Y> patch in X", 1, false},
  };
  switch (op) {
    case SurgeryOp::PauliX:
    case SurgeryOp::PauliZ:
      return {{"tracked in software", 0, false}};
    case SurgeryOp::MeasureZ:
      return {{"transversal Z measurement", 1, false}};
    case SurgeryOp::PrepareZ:
      return {{"transversal Z preparation", 1, false}};
    case SurgeryOp::YPrep:
      return {{"prepare |Y>", half_up(d) + 2, false}};
    case SurgeryOp::CNOT:
      direct_only();
      return {{"prepare |+> ancilla", 1, false},
              {"ZZ merge and split, grow target", d + 1, false},
              {"XX merge and split", d + 1, false},
              {"measure ancilla, move target back", d, false},
              {"shrink target", 1, false}};
    case SurgeryOp::Hadamard:
      direct_only();
      return {{"transversal H", 0, false},
              {"grow patch", d, false},
              {"move corners", d, false},
              {"shrink patch", 1, false},
              {"move corners back", d, false},
              {"shrink and two SWAP layers", 3, false}};
    case SurgeryOp::S:
      direct_only();
      return s_protocol;
    case SurgeryOp::TLike:
    case SurgeryOp::TLikeNoCorrection: {
      direct_only();
      std::vector<Stage> st = {{"ZZ merge with |T> patch", d, false},
                               {"measure |T> patch in X", 1, false}};
      if (op == SurgeryOp::TLike) {
        for (Stage s : s_protocol) {
          s.label = "S correction: " + s.label;
          s.correction = true;
          st.push_back(s);
        }
      }
      return st;
    }
    case SurgeryOp::Rotation:
      moved_only();
      return {{"joint P(x)Z measurement with |T> patch", d, false},
              {"measure |T> patch in X", 1, false}};
    case SurgeryOp::JointMeasurement:
      moved_only();
      return {{"joint Pauli measurement", d, false}};
    case SurgeryOp::FrameUpdate:
      moved_only();
      return {{"tracked in software", 0, false}};
  }
  throw std::invalid_argument("unknown operation");
}

std::int64_t op_rounds(SurgeryOp op, int d, Method method) {
  std::int64_t sum = 0;
  for (const Stage& s : op_stages(op, d, method)) sum += s.rounds;
  return sum;
}

double SurgerySchedule::rounds(CostMode mode) const {
  if (mode == CostMode::WorstCase) return static_cast<double>(total_rounds);
  double sum = 0;
  for (const auto& step : steps)
    for (const auto& s : step.stages) sum += s.correction ? 0.5 * s.rounds : s.rounds;
  return sum;
}

std::string SurgerySchedule::to_json() const {
  nlohmann::ordered_json j;
  j["method"] = method_name(layout.method);
  j["distance"] = layout.d;
  j["total_rounds"] = total_rounds;
  j["peak_patches"] = peak_patches;
  auto& arr = j["steps"] = nlohmann::ordered_json::array();
  for (const auto& step : steps) {
    nlohmann::ordered_json s;
    s["op"] = op_name(step.op);
    s["qubits"] = step.qubits;
    if (!step.basis.empty()) s["basis"] = step.basis;
    s["rounds"] = step.rounds;
    auto& stages = s["stages"] = nlohmann::ordered_json::array();
    for (const auto& st : step.stages) {
      nlohmann::ordered_json e;
      e["label"] = st.label;
      e["rounds"] = st.rounds;
      if (st.correction) e["correction"] = true;
      stages.push_back(e);
    }
    arr.push_back(s);
  }
  return j.dump(2) + "\n";
}

namespace {

int auxiliary_for(SurgeryOp op) {
  switch (op) {
    case SurgeryOp::CNOT:
    case SurgeryOp::Hadamard:
    case SurgeryOp::S:
    case SurgeryOp::TLikeNoCorrection:
    case SurgeryOp::Rotation:
      return 1;
    case SurgeryOp::TLike:
      return 2;  // |T> patch plus |Y> for the correction
    case SurgeryOp::JointMeasurement:
      return 1;  // merged routing region
    default:
      return 0;
  }
}

class Builder {
 public:
  explicit Builder(const LayoutSpec& layout) { sched_.layout = layout; }

  void add(SurgeryOp op, std::vector<std::uint32_t> qubits, std::string basis = {}) {
    SurgeryStep step;
    step.op = op;
    step.qubits = std::move(qubits);
    step.basis = std::move(basis);
    step.stages = op_stages(op, sched_.layout.d, sched_.layout.method);
    for (const auto& s : step.stages) step.rounds += s.rounds;
    step.auxiliary_patches = auxiliary_for(op);
    sched_.total_rounds += step.rounds;
    peak_aux_ = std::max(peak_aux_, step.auxiliary_patches);
    sched_.steps.push_back(std::move(step));
  }

  SurgerySchedule finish(int data_patches) {
    sched_.peak_patches = data_patches + peak_aux_;
    return std::move(sched_);
  }

 private:
  SurgerySchedule sched_;
  int peak_aux_ = 0;
};

void check_capacity(std::uint32_t n, const LayoutSpec& layout) {
  require(n <= static_cast<std::uint32_t>(layout.data_capacity()),
          "circuit uses " + std::to_string(n) + " qubits but the layout hosts " +
              std::to_string(layout.data_capacity()) + " data patches");
}

SurgeryOp diagonal_op(int k) {
  k = ((k % 8) + 8) % 8;
  if (k % 2 == 1) return SurgeryOp::TLike;
  if (k == 4) return SurgeryOp::PauliZ;
  return SurgeryOp::S;
}

}  // namespace

OperationCounts direct_counts(const LogicalCircuit& c) {
  OperationCounts n;
  for (const auto& op : collapse_tlike(c).ops) {
    switch (op.kind) {
      case GateKind::X: ++n.x; break;
      case GateKind::H: ++n.h; break;
      case GateKind::CNOT: ++n.cnot; break;
      case GateKind::Measure: ++n.measure; break;
      default:
        if (auto k = op.diagonal_eighths(); k && op.qubits.size() == 1) {
          switch (diagonal_op(*k)) {
            case SurgeryOp::TLike: ++n.tlike; break;
            case SurgeryOp::S: ++n.s; break;
            default: ++n.z; break;
          }
        }
    }
  }
  return n;
}

SurgerySchedule schedule(const LogicalCircuit& c, const LayoutSpec& layout) {
  layout.validate();
  require(layout.method == Method::Direct, "a logical circuit needs the direct layout; compile it for the moved layout");
  check_capacity(c.num_qubits, layout);
  Builder b(layout);
  for (const auto& op : collapse_tlike(c).ops) {
    switch (op.kind) {
      case GateKind::X: b.add(SurgeryOp::PauliX, op.qubits); break;
      case GateKind::H: b.add(SurgeryOp::Hadamard, op.qubits); break;
      case GateKind::CNOT: b.add(SurgeryOp::CNOT, op.qubits); break;
      case GateKind::Measure: b.add(SurgeryOp::MeasureZ, op.qubits); break;
      case GateKind::Reset: b.add(SurgeryOp::PrepareZ, op.qubits); break;
      default: {
        auto k = op.diagonal_eighths();
        require(k && op.qubits.size() == 1,
                "gate '" + gate_name(op.kind) + "' is not a Clifford+T gate; lower the circuit first");
        b.add(diagonal_op(*k), op.qubits);
      }
    }
  }
  return b.finish(layout.data_capacity());
}

SurgerySchedule schedule(const PauliRotationProgram& p, const LayoutSpec& layout) {
  layout.validate();
  require(layout.method == Method::Moved, "a Pauli rotation program needs the moved layout");
  check_capacity(p.num_qubits, layout);
  Builder b(layout);
  auto touched = [](const PhasedPauli& basis, std::vector<std::uint32_t>& qs, std::string& letters) {
    for (auto q : basis.support()) {
      qs.push_back(static_cast<std::uint32_t>(q));
      letters.push_back(pauli_char(basis[q]));
    }
  };
  for (const auto& e : p.events) {
    std::vector<std::uint32_t> qs;
    std::string letters;
    switch (e.kind) {
      case EventKind::Rotation:
        touched(e.rotation.basis, qs, letters);
        b.add(SurgeryOp::Rotation, qs, letters);
        break;
      case EventKind::Measurement:
        touched(e.basis, qs, letters);
        b.add(SurgeryOp::JointMeasurement, qs, letters);
        break;
      case EventKind::Frame:
        touched(e.rotation.basis, qs, letters);
        b.add(SurgeryOp::FrameUpdate, qs, letters);
        break;
    }
  }
  return b.finish(layout.data_capacity());
}

SurgerySchedule schedule(const OperationCounts& n, const LayoutSpec& layout) {
  layout.validate();
  Builder b(layout);
  auto repeat = [&](SurgeryOp op, std::int64_t count) {
    require(count >= 0, "operation counts must be non-negative");
    for (std::int64_t i = 0; i < count; ++i) b.add(op, {});
  };
  if (layout.method == Method::Direct) {
    repeat(SurgeryOp::PauliX, n.x);
    repeat(SurgeryOp::PauliZ, n.z);
    repeat(SurgeryOp::Hadamard, n.h);
    repeat(SurgeryOp::CNOT, n.cnot);
    repeat(SurgeryOp::S, n.s);
    repeat(SurgeryOp::TLike, n.tlike);
    repeat(SurgeryOp::MeasureZ, n.measure);
  } else {
    repeat(SurgeryOp::Rotation, n.rotations);
    repeat(SurgeryOp::JointMeasurement, n.measurements);
  }
  return b.finish(layout.data_capacity());
}

std::int64_t total_rounds(const OperationCounts& n, const LayoutSpec& layout) {
  layout.validate();
  const int d = layout.d;
  const Method m = layout.method;
  if (m == Method::Moved)
    return n.rotations * op_rounds(SurgeryOp::Rotation, d, m) +
           n.measurements * op_rounds(SurgeryOp::JointMeasurement, d, m);
  return (n.h + n.cnot) * op_rounds(SurgeryOp::Hadamard, d, m) + n.s * op_rounds(SurgeryOp::S, d, m) +
         n.tlike * op_rounds(SurgeryOp::TLike, d, m) + n.measure * op_rounds(SurgeryOp::MeasureZ, d, m);
}

}  // namespace lsqpe
