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

#include "lsqpe/mover.h"

#include <json.hpp>
#include <stdexcept>

#include "lsqpe/synthesis.h"

namespace lsqpe {

namespace {

using nlohmann::json;

PhasedPauli on(std::size_t n, std::uint32_t q, Pauli p) { return PhasedPauli::single(n, q, p); }

PauliRotation rot(PhasedPauli basis, int eighths) {
  return PauliRotation::make(basis, Angle::eighths(eighths));
}

int eighths_of(const PauliRotation& r) {
  if (!r.angle.is_dyadic()) throw std::invalid_argument("rotation angle is not a multiple of pi/4");
  return r.angle.eighths_value();
}

Angle parse_angle(const std::string& s) {
  static const char* names[] = {"0", "+pi/4", "+pi/2", "+3pi/4", "pi", "-3pi/4", "-pi/2", "-pi/4"};
  for (int k = 0; k < 8; ++k) {
    if (s == names[k]) return Angle::eighths(k);
  }
  try {
    return Angle::from_radians(std::stod(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad angle '" + s + "'");
  }
}

json rotation_json(const PauliRotation& r) {
  return json{{"basis", r.basis.str()}, {"angle", r.angle.str()}};
}

PauliRotation rotation_from(const json& j) {
  return PauliRotation::make(PhasedPauli::parse(j.at("basis").get<std::string>()),
                             parse_angle(j.at("angle").get<std::string>()));
}

}  // namespace

bool is_clifford_rotation(const PauliRotation& r) {
  if (!r.angle.is_dyadic()) return false;
  int k = r.angle.eighths_value();
  return k == 2 || k == 4 || k == 6;
}

std::vector<PauliRotation> gate_to_rotations(const Instruction& g, std::size_t n) {
  for (auto q : g.qubits) {
    if (q >= n) throw std::out_of_range("qubit out of range: " + g.str());
  }
  auto z = [&](int k) { return rot(on(n, g.qubits[0], Pauli::Z), k); };
  switch (g.kind) {
    case GateKind::X: return {rot(on(n, g.qubits[0], Pauli::X), 4)};
    case GateKind::Z: return {z(4)};
    case GateKind::H: {
      auto x = rot(on(n, g.qubits[0], Pauli::X), 2);
      return {z(2), x, z(2)};
    }
    case GateKind::S: return {z(2)};
    case GateKind::Sdg: return {z(6)};
    case GateKind::T: return {z(1)};
    case GateKind::Tdg: return {z(7)};
    case GateKind::CNOT: {
      PhasedPauli zx(n);
      zx.set(g.qubits[0], Pauli::Z);
      zx.set(g.qubits[1], Pauli::X);
      return {rot(zx, 2), rot(on(n, g.qubits[0], Pauli::Z), 6),
              rot(on(n, g.qubits[1], Pauli::X), 6)};
    }
    case GateKind::PhaseBlock:
    case GateKind::RZ:
    case GateKind::Phase: {
      // diag(1, e^{i k pi/4}) and RZ(k pi/4) agree up to a global phase.
      auto k = g.diagonal_eighths();
      if (!k) throw std::invalid_argument("free-angle gate must be synthesized first: " + g.str());
      if (*k % 8 == 0) return {};
      return {z(*k)};
    }
    case GateKind::PauliRot: {
      if (!g.angle.is_dyadic()) {
        throw std::invalid_argument("free-angle Pauli rotation must be lowered first: " + g.str());
      }
      PhasedPauli full(n);
      for (std::size_t i = 0; i < g.qubits.size(); ++i) full.set(g.qubits[i], g.basis[i]);
      if (g.angle.eighths_value() == 0) return {};
      return {PauliRotation::make(full.with_phase(g.basis.phase()), g.angle)};
    }
    default:
      throw std::invalid_argument("not a Clifford+T gate: " + g.str());
  }
}

PhasedPauli conjugate_by(const PauliRotation& c, const PhasedPauli& p) {
  if (!is_clifford_rotation(c)) throw std::invalid_argument("not a Clifford rotation");
  if (commutes(c.basis, p)) return p;
  switch (c.angle.eighths_value()) {
    case 2: return c.basis.with_phase(c.basis.phase() + 1) * p;
    case 6: return c.basis.with_phase(c.basis.phase() + 3) * p;
    default: return p.negated();
  }
}

PauliRotation move_past_rotation(const PauliRotation& c, const PauliRotation& r) {
  return PauliRotation::make(conjugate_by(c, r.basis), r.angle);
}

PauliMeasurement move_past_measurement(const PauliRotation& c, const PauliMeasurement& m) {
  return {conjugate_by(c, m.basis), m.bit};
}

CliffordFrame::CliffordFrame(std::size_t n) {
  for (std::size_t q = 0; q < n; ++q) {
    x_.push_back(PhasedPauli::single(n, q, Pauli::X));
    z_.push_back(PhasedPauli::single(n, q, Pauli::Z));
  }
}

PhasedPauli CliffordFrame::conjugate(const PhasedPauli& p) const {
  if (p.size() != x_.size()) throw std::invalid_argument("Pauli width mismatch");
  PhasedPauli out = PhasedPauli(x_.size()).with_phase(p.phase());
  for (std::size_t q = 0; q < p.size(); ++q) {
    switch (p[q]) {
      case Pauli::I: break;
      case Pauli::X: out = out * x_[q]; break;
      case Pauli::Z: out = out * z_[q]; break;
      case Pauli::Y: {
        PhasedPauli t = out * x_[q] * z_[q];  // Y = i X Z
        out = t.with_phase(t.phase() + 1);
        break;
      }
    }
  }
  return out;
}

void CliffordFrame::append(const PauliRotation& c) {
  std::vector<PhasedPauli> nx, nz;
  const std::size_t n = x_.size();
  for (std::size_t q = 0; q < n; ++q) {
    nx.push_back(conjugate(conjugate_by(c, PhasedPauli::single(n, q, Pauli::X))));
    nz.push_back(conjugate(conjugate_by(c, PhasedPauli::single(n, q, Pauli::Z))));
  }
  x_ = std::move(nx);
  z_ = std::move(nz);
}

bool CliffordFrame::is_identity() const {
  const std::size_t n = x_.size();
  for (std::size_t q = 0; q < n; ++q) {
    if (x_[q] != PhasedPauli::single(n, q, Pauli::X) || z_[q] != PhasedPauli::single(n, q, Pauli::Z)) {
      return false;
    }
  }
  return true;
}

std::size_t PauliRotationProgram::rotation_count() const {
  std::size_t k = 0;
  for (const auto& e : events) k += e.kind == EventKind::Rotation;
  return k;
}

std::size_t PauliRotationProgram::measurement_count() const {
  std::size_t k = 0;
  for (const auto& e : events) k += e.kind == EventKind::Measurement;
  return k;
}

std::size_t PauliRotationProgram::frame_event_count() const {
  std::size_t k = 0;
  for (const auto& e : events) k += e.kind == EventKind::Frame;
  return k;
}

std::string PauliRotationProgram::to_json() const {
  json events_j = json::array();
  for (const auto& e : events) {
    json j;
    switch (e.kind) {
      case EventKind::Rotation:
      case EventKind::Frame:
        j = rotation_json(e.rotation);
        j["kind"] = e.kind == EventKind::Rotation ? "rot" : "frame";
        break;
      case EventKind::Measurement:
        j = json{{"kind", "meas"}, {"basis", e.basis.str()}, {"bit", e.bit}, {"invert", e.invert}};
        break;
    }
    if (e.condition) j["cond"] = *e.condition;
    events_j.push_back(std::move(j));
  }
  json frame_j = json::array();
  for (const auto& r : trailing_frame) frame_j.push_back(rotation_json(r));
  json inv = json::array();
  for (bool b : inverted_bits) inv.push_back(b);
  json doc{{"num_qubits", num_qubits},
           {"num_bits", num_bits},
           {"events", events_j},
           {"trailing_frame", frame_j},
           {"inverted_bits", inv}};
  return doc.dump(2) + "\n";
}

PauliRotationProgram PauliRotationProgram::from_json(const std::string& text) {
  PauliRotationProgram p;
  try {
    json doc = json::parse(text);
    p.num_qubits = doc.at("num_qubits").get<std::uint32_t>();
    p.num_bits = doc.at("num_bits").get<std::uint32_t>();
    for (const auto& j : doc.at("events")) {
      ProgramEvent e;
      auto kind = j.at("kind").get<std::string>();
      if (kind == "rot" || kind == "frame") {
        e.kind = kind == "rot" ? EventKind::Rotation : EventKind::Frame;
        e.rotation = rotation_from(j);
      } else if (kind == "meas") {
        e.kind = EventKind::Measurement;
        e.basis = PhasedPauli::parse(j.at("basis").get<std::string>());
        e.bit = j.at("bit").get<std::uint32_t>();
        e.invert = j.value("invert", false);
      } else {
        throw std::invalid_argument("unknown event kind '" + kind + "'");
      }
      if (j.contains("cond")) e.condition = j.at("cond").get<std::uint32_t>();
      p.events.push_back(std::move(e));
    }
    for (const auto& j : doc.at("trailing_frame")) p.trailing_frame.push_back(rotation_from(j));
    for (const auto& b : doc.at("inverted_bits")) p.inverted_bits.push_back(b.get<bool>());
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("program JSON: ") + e.what());
  }
  return p;
}

std::size_t tlike_block_count(const LogicalCircuit& c) {
  std::size_t k = 0;
  for (const auto& op : collapse_tlike(c).ops) {
    if (op.kind == GateKind::Measure || op.kind == GateKind::Reset) continue;
    for (const auto& r : gate_to_rotations(op, c.num_qubits)) k += eighths_of(r) % 2;
  }
  return k;
}

PauliRotationProgram compile(const LogicalCircuit& c) {
  c.validate();
  PauliRotationProgram out;
  out.num_qubits = c.num_qubits;
  out.num_bits = c.num_bits;
  out.inverted_bits.assign(c.num_bits, false);
  CliffordFrame frame(c.num_qubits);

  auto push_clifford = [&](const PauliRotation& r, const std::optional<std::uint32_t>& cond) {
    if (cond) {
      ProgramEvent e;
      e.kind = EventKind::Frame;
      e.rotation = PauliRotation::make(frame.conjugate(r.basis), r.angle);
      e.condition = cond;
      out.events.push_back(std::move(e));
      return;
    }
    frame.append(r);
    auto& tf = out.trailing_frame;
    if (!tf.empty() && tf.back().basis == r.basis) {
      Angle sum = tf.back().angle + r.angle;
      if (sum.eighths_value() == 0) {
        tf.pop_back();
      } else {
        tf.back().angle = sum;
      }
    } else {
      tf.push_back(r);
    }
  };

  for (const auto& op : collapse_tlike(c).ops) {
    if (op.kind == GateKind::Measure) {
      PhasedPauli b = frame.conjugate(PhasedPauli::single(c.num_qubits, op.qubits[0], Pauli::Z));
      ProgramEvent e;
      e.kind = EventKind::Measurement;
      e.invert = b.phase() == 2;
      e.basis = b.with_phase(0);
      e.bit = op.bit;
      e.condition = op.condition;
      if (e.condition) throw std::invalid_argument("conditioned measurement is not supported");
      out.inverted_bits[op.bit] = e.invert;
      out.events.push_back(std::move(e));
      continue;
    }
    for (const auto& r : gate_to_rotations(op, c.num_qubits)) {
      int k = eighths_of(r);
      if (k % 2 == 0) {
        if (k != 0) push_clifford(r, op.condition);
        continue;
      }
      // Split k pi/4 into a +-pi/4 event and a Clifford remainder.
      int s = (k == 1 || k == 3) ? 1 : 7;
      ProgramEvent e;
      e.kind = EventKind::Rotation;
      e.rotation = PauliRotation::make(frame.conjugate(r.basis), Angle::eighths(s));
      e.condition = op.condition;
      out.events.push_back(std::move(e));
      int rem = ((k - s) % 8 + 8) % 8;
      if (rem != 0) push_clifford(PauliRotation{r.basis, Angle::eighths(rem)}, op.condition);
    }
  }
  return out;
}

namespace {

struct ProgramBranch {
  StateVector state;
  std::string bits;
  CliffordFrame frame;
};

class ProgramWalker {
 public:
  ProgramWalker(const PauliRotationProgram& p, const SimOptions& opts) : p_(p), opts_(opts) {
    if (p.measurement_count() > opts.max_branch_points) {
      throw std::invalid_argument("branch limit exceeded: " + std::to_string(p.measurement_count()) +
                                  " measurement points");
    }
    dist_.width = p.num_bits;
  }

  OutcomeDistribution run() {
    walk(0, ProgramBranch{StateVector(p_.num_qubits), std::string(p_.num_bits, '0'),
                          CliffordFrame(p_.num_qubits)});
    return std::move(dist_);
  }

 private:
  void walk(std::size_t i, ProgramBranch br) {
    for (; i < p_.events.size(); ++i) {
      const ProgramEvent& e = p_.events[i];
      if (e.condition) {
        if (*e.condition >= p_.num_bits) throw std::out_of_range("condition bit out of range");
        if (br.bits[*e.condition] != '1') continue;
      }
      switch (e.kind) {
        case EventKind::Frame:
          br.frame.append(e.rotation);
          continue;
        case EventKind::Rotation:
          br.state.apply_rotation(br.frame.conjugate(e.rotation.basis), e.rotation.angle.value());
          continue;
        case EventKind::Measurement:
          break;
      }
      if (e.bit >= p_.num_bits) throw std::out_of_range("measurement bit out of range");
      // Project onto the +-1 eigenspaces of the physical observable.
      StateVector flipped = br.state;
      flipped.apply_pauli(br.frame.conjugate(e.basis));
      ProgramBranch minus = br;
      auto& plus_amps = br.state.amplitudes();
      auto& minus_amps = minus.state.amplitudes();
      const auto& f = flipped.amplitudes();
      for (std::size_t b = 0; b < plus_amps.size(); ++b) {
        plus_amps[b] = (plus_amps[b] + f[b]) / 2.0;
        minus_amps[b] = (minus_amps[b] - f[b]) / 2.0;
      }
      char zero = e.invert ? '1' : '0', one = e.invert ? '0' : '1';
      br.bits[e.bit] = zero;
      minus.bits[e.bit] = one;
      double floor = opts_.prune_norm * opts_.prune_norm;
      if (minus.state.norm2() >= floor) walk(i + 1, std::move(minus));
      if (br.state.norm2() < floor) return;
    }
    dist_.probs[br.bits] += br.state.norm2();
  }

  const PauliRotationProgram& p_;
  const SimOptions& opts_;
  OutcomeDistribution dist_;
};

}  // namespace

OutcomeDistribution exact_distribution(const PauliRotationProgram& p, const SimOptions& opts) {
  return ProgramWalker(p, opts).run();
}

Eigen::MatrixXcd program_unitary(const PauliRotationProgram& p) {
  if (p.num_qubits > 12) throw std::invalid_argument("too many qubits for a dense unitary");
  std::vector<PauliRotation> seq;
  for (const auto& e : p.events) {
    if (e.kind == EventKind::Measurement || e.condition) {
      throw std::invalid_argument("program_unitary needs a measurement-free, unconditioned program");
    }
    seq.push_back(e.rotation);
  }
  seq.insert(seq.end(), p.trailing_frame.begin(), p.trailing_frame.end());
  std::size_t dim = std::size_t{1} << p.num_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector sv(p.num_qubits);
    sv.amplitudes()[0] = 0;
    sv.amplitudes()[col] = 1;
    for (const auto& r : seq) sv.apply_rotation(r.basis, r.angle.value());
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = sv.amplitudes()[row];
  }
  return u;
}

}  // namespace lsqpe
