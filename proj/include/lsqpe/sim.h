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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lsqpe/circuit.h"
#include "lsqpe/pauli.h"

namespace lsqpe {

using Complex = std::complex<double>;

/// Dense state vector. Qubit q is bit q of the basis-state index.
class StateVector {
 public:
  explicit StateVector(std::uint32_t num_qubits);

  std::uint32_t num_qubits() const { return num_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  std::vector<Complex>& amplitudes() { return amps_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  /// Applies a unitary instruction, ignoring any classical condition.
  /// Measure and Reset are rejected; they need branching.
  void apply(const Instruction& op);

  void apply_pauli(const PhasedPauli& p);
  /// exp(-i P theta / 2); P must be Hermitian and span all qubits.
  void apply_rotation(const PhasedPauli& p, double theta);
  void apply_matrix(std::uint32_t q, const Eigen::Matrix2cd& m);
  void apply_cnot(std::uint32_t control, std::uint32_t target);

  /// Zeroes every amplitude whose qubit q differs from `outcome`, returning
  /// the squared norm that remains.
  double project(std::uint32_t q, int outcome);
  /// Squared norm of the component with qubit q equal to 1.
  double probability_one(std::uint32_t q) const;
  double norm2() const;

 private:
  std::uint32_t num_qubits_;
  std::vector<Complex> amps_;
};

/// Full-register matrix of a Pauli string (letter q acts on bit q).
Eigen::MatrixXcd pauli_matrix(const PhasedPauli& p);

/// Matrix of a single-qubit gate kind (X, Z, H, S, Sdg, T, Tdg, RZ, Phase,
/// PhaseBlock).
Eigen::Matrix2cd single_qubit_matrix(const Instruction& op);

/// Probabilities over classical-bit strings; character i of a key is bit i.
struct OutcomeDistribution {
  std::size_t width = 0;
  std::map<std::string, double> probs;

  double total() const;
  double at(const std::string& key) const;
  std::string most_likely() const;
};

double tvd(const OutcomeDistribution& a, const OutcomeDistribution& b);

struct SimOptions {
  std::size_t max_branch_points = 20;
  /// Branches whose amplitude norm falls below this are dropped.
  double prune_norm = 1e-14;
};

/// Exact outcome distribution by enumerating every measurement branch.
/// The state starts in |0...0> with all classical bits 0.
OutcomeDistribution exact_distribution(const LogicalCircuit& c, const SimOptions& opts = {});

/// Empirical counts from independent seeded shots.
std::map<std::string, std::size_t> sample_counts(const LogicalCircuit& c, std::size_t shots,
                                                 std::uint64_t seed);

/// Product of the gate matrices of ops[begin, end). Classical control and
/// measurement are rejected.
Eigen::MatrixXcd segment_unitary(const LogicalCircuit& c, std::size_t begin, std::size_t end);
Eigen::MatrixXcd circuit_unitary(const LogicalCircuit& c);

/// sqrt(max(0, 1 - |tr(u^dag v)| / N)) for N x N unitaries; zero exactly when
/// u and v agree up to a global phase. Non-unitary input (1e-10) throws.
double phase_invariant_distance(const Eigen::MatrixXcd& u, const Eigen::MatrixXcd& v);

/// Eigen-decomposition of a Hermitian H together with the overlaps of an
/// input state and the phases phi_j = frac(lambda_j t / 2pi) of e^{iHt}.
struct ReferenceSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd eigenvectors;
  Eigen::VectorXcd overlaps;
  Eigen::VectorXd phases;

  static ReferenceSpectrum compute(const Eigen::MatrixXcd& h, const Eigen::VectorXcd& psi,
                                   double t);
};

}  // namespace lsqpe
