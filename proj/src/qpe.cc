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

#include "lsqpe/qpe.h"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

namespace lsqpe {

void Hamiltonian::validate() const {
  if (terms.empty()) throw std::invalid_argument("empty Hamiltonian");
  std::set<std::string> seen;
  for (const auto& term : terms) {
    if (term.coeff == 0) throw std::invalid_argument("zero coefficient in Hamiltonian");
    if (term.basis.size() != num_qubits) {
      throw std::invalid_argument("term " + term.basis.str() + " has the wrong width");
    }
    if (term.basis.phase() != 0) {
      throw std::invalid_argument("term " + term.basis.str() + " must have phase +1");
    }
    if (term.basis.is_identity()) {
      throw std::invalid_argument("identity terms only shift the phase; drop them");
    }
    if (!seen.insert(term.basis.str()).second) {
      throw std::invalid_argument("repeated term " + term.basis.str());
    }
  }
  for (const auto& op : prep) {
    for (auto q : op.qubits) {
      if (q >= num_qubits) throw std::invalid_argument("preparation gate out of range");
    }
    if (op.kind == GateKind::Measure || op.kind == GateKind::Reset || op.condition) {
      throw std::invalid_argument("preparation must be unitary and unconditioned");
    }
  }
}

Hamiltonian h2_hamiltonian() {
  Hamiltonian h;
  h.num_qubits = 1;
  h.terms = {{0.78796736, PhasedPauli::parse("Z")}, {0.18128881, PhasedPauli::parse("X")}};
  h.prep = {Instruction::gate(GateKind::X, 0)};
  return h;
}

double scale_time(const Hamiltonian& h, TimeConvention convention) {
  if (h.terms.empty()) throw std::invalid_argument("empty Hamiltonian");
  double sum = 0;
  for (const auto& term : h.terms) sum += std::abs(term.coeff);
  switch (convention) {
    case TimeConvention::PiOverSum: return std::numbers::pi / sum;
    case TimeConvention::InverseTwoSum: return 1 / (2 * sum);
  }
  throw std::invalid_argument("unknown time convention");
}

void append_merged(std::vector<PauliRotation>& list, const std::vector<PauliRotation>& more) {
  for (const auto& r : more) {
    if (!list.empty() && list.back().basis == r.basis) {
      list.back().angle = list.back().angle + r.angle;
    } else {
      list.push_back(r);
    }
  }
}

std::vector<PauliRotation> trotter_rotation_list(const Hamiltonian& h, double t, int steps) {
  h.validate();
  if (!(t > 0)) throw std::invalid_argument("time step must be positive");
  if (steps < 1) throw std::invalid_argument("need at least one Trotter step");

  std::vector<PauliRotation> half;
  for (const auto& term : h.terms) {
    std::vector<Pauli> letters{Pauli::Z};
    letters.insert(letters.end(), term.basis.letters().begin(), term.basis.letters().end());
    half.push_back(PauliRotation::make(PhasedPauli(letters),
                                       Angle::from_radians(term.coeff * t / (2.0 * steps))));
  }
  std::vector<PauliRotation> step = half;
  append_merged(step, std::vector<PauliRotation>(half.rbegin(), half.rend()));

  std::vector<PauliRotation> out;
  for (int s = 0; s < steps; ++s) append_merged(out, step);
  return out;
}

namespace {

// Emits a rotation whose basis letter 0 sits on `control` and whose
// remaining letters sit on `data_offset + i`, restricted to its support.
void emit_controlled_rotation(LogicalCircuit& c, const PauliRotation& r, std::uint32_t control,
                              std::uint32_t data_offset) {
  std::vector<std::uint32_t> qubits;
  std::vector<Pauli> letters;
  for (std::size_t i = 0; i < r.basis.size(); ++i) {
    if (r.basis[i] == Pauli::I) continue;
    qubits.push_back(i == 0 ? control : data_offset + static_cast<std::uint32_t>(i) - 1);
    letters.push_back(r.basis[i]);
  }
  c.push(Instruction::pauli_rot(std::move(qubits), PhasedPauli(letters), r.angle));
}

std::vector<PauliRotation> power_list(const std::vector<PauliRotation>& step, std::size_t reps) {
  std::vector<PauliRotation> out;
  for (std::size_t i = 0; i < reps; ++i) append_merged(out, step);
  return out;
}

void check_spec(const QpeSpec& spec) {
  if (spec.bits < 1) throw std::invalid_argument("precision bits must be >= 1");
  if (spec.bits > 20) throw std::invalid_argument("precision bits above 20 are not supported");
  if (spec.trotter_steps < 1) throw std::invalid_argument("trotter steps must be >= 1");
}

void emit_prep(LogicalCircuit& c, const Hamiltonian& h, std::uint32_t data_offset) {
  for (Instruction op : h.prep) {
    for (auto& q : op.qubits) q += data_offset;
    c.push(std::move(op));
  }
}

}  // namespace

LogicalCircuit build_iterative_qpe(const Hamiltonian& h, const QpeSpec& spec) {
  if (spec.mode != QpeMode::Iterative) throw std::invalid_argument("spec is not iterative");
  check_spec(spec);
  h.validate();
  const int m = spec.bits;
  const double t = scale_time(h, spec.convention);
  const auto step = trotter_rotation_list(h, t, spec.trotter_steps);

  LogicalCircuit c(h.num_qubits + 1, static_cast<std::uint32_t>(m));
  emit_prep(c, h, 1);
  for (int k = m; k >= 1; --k) {
    if (k < m) {
      c.push(Instruction::gate(GateKind::X, 0).conditioned_on(static_cast<std::uint32_t>(m - k - 1)));
    }
    c.push(Instruction::gate(GateKind::H, 0));
    for (const auto& r : power_list(step, std::size_t{1} << (k - 1))) {
      emit_controlled_rotation(c, r, 0, 1);
    }
    for (int j = m; j > k; --j) {
      auto bit = static_cast<std::uint32_t>(m - j);
      int gap = j - k;
      if (gap == 1) {
        c.push(Instruction::gate(GateKind::Sdg, 0).conditioned_on(bit));
      } else if (gap == 2) {
        c.push(Instruction::gate(GateKind::Tdg, 0).conditioned_on(bit));
      } else if (spec.allow_fine_corrections) {
        double angle = -std::numbers::pi / std::ldexp(1.0, gap);
        c.push(Instruction::phase(0, Angle::radians(angle)).conditioned_on(bit));
      } else {
        throw std::invalid_argument(
            "precision " + std::to_string(m) +
            " needs phase corrections finer than pi/4; enable fine corrections and synthesize");
      }
    }
    c.push(Instruction::gate(GateKind::H, 0));
    c.push(Instruction::measure(0, static_cast<std::uint32_t>(m - k)));
  }
  c.validate();
  return c;
}

LogicalCircuit build_textbook_qpe(const Hamiltonian& h, const QpeSpec& spec) {
  if (spec.mode != QpeMode::Textbook) throw std::invalid_argument("spec is not textbook");
  check_spec(spec);
  h.validate();
  const auto m = static_cast<std::uint32_t>(spec.bits);
  const double t = scale_time(h, spec.convention);
  const auto step = trotter_rotation_list(h, t, spec.trotter_steps);

  LogicalCircuit c(m + h.num_qubits, m);
  emit_prep(c, h, m);
  for (std::uint32_t a = 0; a < m; ++a) c.push(Instruction::gate(GateKind::H, a));
  for (std::uint32_t j = m; j-- > 0;) {
    for (const auto& r : power_list(step, std::size_t{1} << (m - 1 - j))) {
      emit_controlled_rotation(c, r, j, m);
    }
  }
  for (std::uint32_t j = 0; j < m; ++j) {
    for (std::uint32_t l = 0; l < j; ++l) {
      double angle = -std::numbers::pi / std::ldexp(1.0, static_cast<int>(j - l));
      c.push(Instruction::cphase(l, j, Angle::from_radians(angle)));
    }
    c.push(Instruction::gate(GateKind::H, j));
  }
  for (std::uint32_t j = 0; j < m; ++j) c.push(Instruction::measure(j, j));
  c.validate();
  return c;
}

LogicalCircuit build_qpe(const Hamiltonian& h, const QpeSpec& spec) {
  return spec.mode == QpeMode::Iterative ? build_iterative_qpe(h, spec)
                                         : build_textbook_qpe(h, spec);
}

LogicalCircuit lower_two_qubit_rotations(const LogicalCircuit& c) {
  LogicalCircuit out(c.num_qubits, c.num_bits);
  for (const auto& op : c.ops) {
    auto emit = [&](Instruction g) {
      if (op.condition) g.condition = op.condition;
      out.push(std::move(g));
    };
    if (op.kind == GateKind::CPhase) {
      std::uint32_t a = op.qubits[0], b = op.qubits[1];
      Angle half = Angle::from_radians(op.angle.signed_value() / 2);
      emit(Instruction::phase(a, half));
      emit(Instruction::phase(b, half));
      emit(Instruction::cnot(a, b));
      emit(Instruction::phase(b, -half));
      emit(Instruction::cnot(a, b));
      continue;
    }
    if (op.kind != GateKind::PauliRot) {
      out.push(op);
      continue;
    }
    const auto& qs = op.qubits;
    // Basis change in time order, then the parity ladder onto the last qubit.
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (op.basis[i] == Pauli::X) {
        emit(Instruction::gate(GateKind::H, qs[i]));
      } else if (op.basis[i] == Pauli::Y) {
        emit(Instruction::gate(GateKind::Sdg, qs[i]));
        emit(Instruction::gate(GateKind::H, qs[i]));
      }
    }
    for (std::size_t i = 0; i + 1 < qs.size(); ++i) emit(Instruction::cnot(qs[i], qs.back()));
    emit(Instruction::rz(qs.back(), op.angle));
    for (std::size_t i = qs.size() - 1; i-- > 0;) emit(Instruction::cnot(qs[i], qs.back()));
    for (std::size_t i = 0; i < qs.size(); ++i) {
      if (op.basis[i] == Pauli::X) {
        emit(Instruction::gate(GateKind::H, qs[i]));
      } else if (op.basis[i] == Pauli::Y) {
        emit(Instruction::gate(GateKind::H, qs[i]));
        emit(Instruction::gate(GateKind::S, qs[i]));
      }
    }
  }
  return out;
}

}  // namespace lsqpe
