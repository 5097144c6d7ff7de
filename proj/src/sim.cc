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

#include "lsqpe/sim.h"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace lsqpe {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex i_pow(int k) {
  static const Complex table[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return table[((k % 4) + 4) % 4];
}

Complex unit_phase(double theta) { return std::polar(1.0, theta); }

std::uint32_t max_qubits_for_matrix() { return 12; }

}  // namespace

StateVector::StateVector(std::uint32_t num_qubits)
    : num_qubits_(num_qubits), amps_(std::size_t{1} << num_qubits) {
  if (num_qubits > 30) throw std::invalid_argument("too many qubits for dense simulation");
  amps_[0] = 1.0;
}

void StateVector::apply_pauli(const PhasedPauli& p) {
  if (p.size() != num_qubits_) throw std::invalid_argument("Pauli width mismatch");
  std::size_t xmask = 0, zmask = 0;
  int ys = 0;
  for (std::uint32_t q = 0; q < num_qubits_; ++q) {
    Pauli l = p[q];
    if (l == Pauli::X || l == Pauli::Y) xmask |= std::size_t{1} << q;
    if (l == Pauli::Z || l == Pauli::Y) zmask |= std::size_t{1} << q;
    ys += l == Pauli::Y;
  }
  Complex base = i_pow(p.phase() + ys);
  std::vector<Complex> out(amps_.size());
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    double sign = (std::popcount(b & zmask) & 1) ? -1.0 : 1.0;
    out[b ^ xmask] = base * sign * amps_[b];
  }
  amps_.swap(out);
}

void StateVector::apply_rotation(const PhasedPauli& p, double theta) {
  if (!p.is_hermitian()) throw std::invalid_argument("rotation basis must be Hermitian");
  std::vector<Complex> original = amps_;
  apply_pauli(p);
  double c = std::cos(theta / 2), s = std::sin(theta / 2);
  for (std::size_t b = 0; b < amps_.size(); ++b) amps_[b] = c * original[b] - kI * s * amps_[b];
}

void StateVector::apply_matrix(std::uint32_t q, const Eigen::Matrix2cd& m) {
  std::size_t bit = std::size_t{1} << q;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) continue;
    Complex a0 = amps_[b], a1 = amps_[b | bit];
    amps_[b] = m(0, 0) * a0 + m(0, 1) * a1;
    amps_[b | bit] = m(1, 0) * a0 + m(1, 1) * a1;
  }
}

void StateVector::apply_cnot(std::uint32_t control, std::uint32_t target) {
  std::size_t c = std::size_t{1} << control, t = std::size_t{1} << target;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if ((b & c) && !(b & t)) std::swap(amps_[b], amps_[b | t]);
  }
}

void StateVector::apply(const Instruction& op) {
  for (auto q : op.qubits) {
    if (q >= num_qubits_) throw std::out_of_range("qubit out of range: " + op.str());
  }
  switch (op.kind) {
    case GateKind::CNOT:
      apply_cnot(op.qubits[0], op.qubits[1]);
      return;
    case GateKind::CPhase: {
      std::size_t mask = (std::size_t{1} << op.qubits[0]) | (std::size_t{1} << op.qubits[1]);
      Complex ph = unit_phase(op.angle.value());
      for (std::size_t b = 0; b < amps_.size(); ++b) {
        if ((b & mask) == mask) amps_[b] *= ph;
      }
      return;
    }
    case GateKind::PauliRot: {
      PhasedPauli full(num_qubits_);
      for (std::size_t i = 0; i < op.qubits.size(); ++i) full.set(op.qubits[i], op.basis[i]);
      apply_rotation(full.with_phase(op.basis.phase()), op.angle.value());
      return;
    }
    case GateKind::Measure:
    case GateKind::Reset:
      throw std::invalid_argument("non-unitary instruction in unitary context: " + op.str());
    default:
      apply_matrix(op.qubits[0], single_qubit_matrix(op));
      return;
  }
}

double StateVector::project(std::uint32_t q, int outcome) {
  std::size_t bit = std::size_t{1} << q;
  double kept = 0;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (((b & bit) != 0) != (outcome != 0)) {
      amps_[b] = 0;
    } else {
      kept += std::norm(amps_[b]);
    }
  }
  return kept;
}

double StateVector::probability_one(std::uint32_t q) const {
  std::size_t bit = std::size_t{1} << q;
  double p = 0;
  for (std::size_t b = 0; b < amps_.size(); ++b) {
    if (b & bit) p += std::norm(amps_[b]);
  }
  return p;
}

double StateVector::norm2() const {
  double n = 0;
  for (const auto& a : amps_) n += std::norm(a);
  return n;
}

Eigen::MatrixXcd pauli_matrix(const PhasedPauli& p) {
  std::size_t dim = std::size_t{1} << p.size();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector sv(static_cast<std::uint32_t>(p.size()));
    sv.amplitudes()[0] = 0;
    sv.amplitudes()[col] = 1;
    sv.apply_pauli(p);
    for (std::size_t row = 0; row < dim; ++row) m(row, col) = sv.amplitudes()[row];
  }
  return m;
}

Eigen::Matrix2cd single_qubit_matrix(const Instruction& op) {
  Eigen::Matrix2cd m;
  const double r = 1 / std::numbers::sqrt2;
  switch (op.kind) {
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, kI; break;
    case GateKind::Sdg: m << 1, 0, 0, -kI; break;
    case GateKind::T: m << 1, 0, 0, unit_phase(std::numbers::pi / 4); break;
    case GateKind::Tdg: m << 1, 0, 0, unit_phase(-std::numbers::pi / 4); break;
    case GateKind::RZ: {
      double th = op.angle.value();
      m << unit_phase(-th / 2), 0, 0, unit_phase(th / 2);
      break;
    }
    case GateKind::Phase: m << 1, 0, 0, unit_phase(op.angle.value()); break;
    case GateKind::PhaseBlock: m << 1, 0, 0, unit_phase(op.phase8 * std::numbers::pi / 4); break;
    default:
      throw std::invalid_argument("not a single-qubit gate: " + op.str());
  }
  return m;
}

double OutcomeDistribution::total() const {
  double s = 0;
  for (const auto& [k, p] : probs) s += p;
  return s;
}

double OutcomeDistribution::at(const std::string& key) const {
  auto it = probs.find(key);
  return it == probs.end() ? 0.0 : it->second;
}

std::string OutcomeDistribution::most_likely() const {
  std::string best;
  double best_p = -1;
  for (const auto& [k, p] : probs) {
    if (p > best_p) {
      best = k;
      best_p = p;
    }
  }
  return best;
}

double tvd(const OutcomeDistribution& a, const OutcomeDistribution& b) {
  if (a.width != b.width) throw std::invalid_argument("distribution width mismatch");
  double s = 0;
  for (const auto& [k, p] : a.probs) s += std::abs(p - b.at(k));
  for (const auto& [k, p] : b.probs) {
    if (!a.probs.contains(k)) s += std::abs(p);
  }
  return s / 2;
}

namespace {

struct Branch {
  StateVector state;
  std::string bits;
};

class BranchWalker {
 public:
  BranchWalker(const LogicalCircuit& c, const SimOptions& opts) : c_(c), opts_(opts) {
    std::size_t points = 0;
    for (const auto& op : c.ops) {
      points += op.kind == GateKind::Measure || op.kind == GateKind::Reset;
    }
    if (points > opts.max_branch_points) {
      throw std::invalid_argument("branch limit exceeded: " + std::to_string(points) +
                                  " measurement/reset points");
    }
    dist_.width = c.num_bits;
  }

  OutcomeDistribution run() {
    Branch root{StateVector(c_.num_qubits), std::string(c_.num_bits, '0')};
    walk(0, std::move(root));
    return std::move(dist_);
  }

 private:
  void walk(std::size_t i, Branch br) {
    for (; i < c_.ops.size(); ++i) {
      const Instruction& op = c_.ops[i];
      if (op.condition && br.bits[*op.condition] != '1') continue;
      if (op.kind != GateKind::Measure && op.kind != GateKind::Reset) {
        br.state.apply(op);
        continue;
      }
      std::uint32_t q = op.qubits[0];
      Branch one = br;
      double p0 = br.state.project(q, 0);
      double p1 = one.state.project(q, 1);
      if (op.kind == GateKind::Measure) {
        br.bits[op.bit] = '0';
        one.bits[op.bit] = '1';
      } else {
        one.state.apply(Instruction::gate(GateKind::X, q));
      }
      double floor = opts_.prune_norm * opts_.prune_norm;
      if (p1 >= floor) walk(i + 1, std::move(one));
      if (p0 < floor) return;
    }
    dist_.probs[br.bits] += br.state.norm2();
  }

  const LogicalCircuit& c_;
  const SimOptions& opts_;
  OutcomeDistribution dist_;
};

}  // namespace

OutcomeDistribution exact_distribution(const LogicalCircuit& c, const SimOptions& opts) {
  c.validate();
  return BranchWalker(c, opts).run();
}

std::map<std::string, std::size_t> sample_counts(const LogicalCircuit& c, std::size_t shots,
                                                 std::uint64_t seed) {
  c.validate();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::map<std::string, std::size_t> counts;
  for (std::size_t shot = 0; shot < shots; ++shot) {
    StateVector sv(c.num_qubits);
    std::string bits(c.num_bits, '0');
    for (const auto& op : c.ops) {
      if (op.condition && bits[*op.condition] != '1') continue;
      if (op.kind != GateKind::Measure && op.kind != GateKind::Reset) {
        sv.apply(op);
        continue;
      }
      std::uint32_t q = op.qubits[0];
      double p1 = sv.probability_one(q) / sv.norm2();
      int outcome = uniform(rng) < p1 ? 1 : 0;
      double kept = sv.project(q, outcome);
      double scale = 1 / std::sqrt(kept);
      for (auto& a : sv.amplitudes()) a *= scale;
      if (op.kind == GateKind::Measure) {
        bits[op.bit] = static_cast<char>('0' + outcome);
      } else if (outcome == 1) {
        sv.apply(Instruction::gate(GateKind::X, q));
      }
    }
    ++counts[bits];
  }
  return counts;
}

Eigen::MatrixXcd segment_unitary(const LogicalCircuit& c, std::size_t begin, std::size_t end) {
  if (begin > end || end > c.ops.size()) throw std::out_of_range("segment range out of bounds");
  if (c.num_qubits > max_qubits_for_matrix()) {
    throw std::invalid_argument("too many qubits for a dense unitary");
  }
  for (std::size_t i = begin; i < end; ++i) {
    const auto& op = c.ops[i];
    if (op.kind == GateKind::Measure || op.kind == GateKind::Reset) {
      throw std::invalid_argument("measurement inside unitary segment at " + std::to_string(i));
    }
    if (op.condition) {
      throw std::invalid_argument("classically controlled gate inside unitary segment at " +
                                  std::to_string(i));
    }
  }
  std::size_t dim = std::size_t{1} << c.num_qubits;
  Eigen::MatrixXcd u(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector sv(c.num_qubits);
    sv.amplitudes()[0] = 0;
    sv.amplitudes()[col] = 1;
    for (std::size_t i = begin; i < end; ++i) sv.apply(c.ops[i]);
    for (std::size_t row = 0; row < dim; ++row) u(row, col) = sv.amplitudes()[row];
  }
  return u;
}

Eigen::MatrixXcd circuit_unitary(const LogicalCircuit& c) {
  return segment_unitary(c, 0, c.ops.size());
}

double phase_invariant_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw std::invalid_argument("matrix shape mismatch");
  }
  const auto id = Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if ((u.adjoint() * u - id).cwiseAbs().maxCoeff() > 1e-10 ||
      (v.adjoint() * v - id).cwiseAbs().maxCoeff() > 1e-10) {
    throw std::invalid_argument("phase_invariant_distance needs unitary inputs");
  }
  double overlap = std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
  return std::sqrt(std::max(0.0, 1.0 - overlap));
}

ReferenceSpectrum ReferenceSpectrum::compute(const Eigen::MatrixXcd& h,
                                             const Eigen::VectorXcd& psi, double t) {
  if (h.rows() != h.cols() || h.rows() != psi.size()) {
    throw std::invalid_argument("Hamiltonian/state dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  ReferenceSpectrum out;
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();
  out.overlaps = out.eigenvectors.adjoint() * psi.normalized();
  out.phases.resize(out.eigenvalues.size());
  for (Eigen::Index j = 0; j < out.eigenvalues.size(); ++j) {
    double phi = out.eigenvalues[j] * t / (2 * std::numbers::pi);
    out.phases[j] = phi - std::floor(phi);
  }
  return out;
}

}  // namespace lsqpe
