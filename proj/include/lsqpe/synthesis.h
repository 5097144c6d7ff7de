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
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsqpe/circuit.h"

namespace lsqpe {

/// Single-qubit Clifford+T word in time order (first entry acts first).
struct CliffordTSequence {
  std::vector<GateKind> gates;
  double epsilon = 0;  // achieved phase-invariant distance to the target
  int t_count = 0;

  std::string str() const;
};

/// Diagonal run Z^a S^b T^c, i.e. diag(1, e^{i pi k / 4}) with k = 4a + 2b + c.
struct TLikeBlock {
  bool has_t = false;
  bool has_s = false;
  bool has_z = false;

  static TLikeBlock from_eighths(int k);
  int eighths() const { return 4 * has_z + 2 * has_s + has_t; }
  bool empty() const { return !has_t && !has_s && !has_z; }
};

class SynthesisBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SynthesisOptions {
  /// Largest T-count stored in the normal-form lookup table. Each extra unit
  /// doubles memory (12 gives about 295k entries).
  int table_t_count = 12;
  /// Give up when no sequence with at most this many T gates reaches the
  /// target accuracy.
  int max_t_count = 40;
};

Eigen::Matrix2cd rz_matrix(double theta);
Eigen::Matrix2cd sequence_matrix(const std::vector<GateKind>& gates);

/// Shortest time-order spelling of diag(1, e^{i pi k / 4}) over
/// {Z, S, Sdg, T, Tdg}; empty for k = 0 mod 8.
std::vector<GateKind> dyadic_phase_spelling(int eighths);

/// Merges diagonal runs into their canonical spelling and cancels adjacent
/// Hadamard pairs until nothing changes. The unitary is preserved up to a
/// global phase.
std::vector<GateKind> simplify_sequence(std::vector<GateKind> gates);

/// Parses "T H Sdg ..." (S† and T† also accepted).
std::vector<GateKind> parse_gate_string(const std::string& text);

/// RZ synthesis by meet in the middle over Matsumoto-Amano normal forms.
///
/// Normal forms (T | e)(HT | SHT)* C with up to `table_t_count` T gates sit
/// in a 4D kd-tree keyed by their SU(2) quaternion. A query walks prefixes
/// (T | e)(HT | SHT)* layer by layer in T-count and looks for table entries
/// within the target radius of prefix^dag * RZ(theta). The first layer with
/// a hit holds the T-optimal answer; ties go to the shorter and then the
/// lexicographically smaller gate string. Results are cached per angle and
/// precision. Safe for concurrent use.
class Synthesizer {
 public:
  explicit Synthesizer(SynthesisOptions opts = {});
  ~Synthesizer();
  Synthesizer(const Synthesizer&) = delete;
  Synthesizer& operator=(const Synthesizer&) = delete;

  /// Sequence within 2^-bits of RZ(theta) up to global phase. Multiples of
  /// pi/4 return their exact spelling.
  CliffordTSequence synthesize_rz(double theta, int bits);

  /// Registers externally synthesized sequences keyed by the angle printed
  /// with 12 decimals. They are preferred whenever they meet the target.
  void add_imports(const std::map<std::string, std::string>& table);
  void load_import_file(const std::string& path);

  std::size_t table_size();
  const SynthesisOptions& options() const { return opts_; }

 private:
  struct Table;
  const Table& table();
  CliffordTSequence search(double theta, double eps);

  SynthesisOptions opts_;
  std::once_flag table_once_;
  std::unique_ptr<Table> table_;
  std::mutex mu_;
  std::map<std::pair<double, int>, CliffordTSequence> cache_;
  std::map<std::string, std::vector<GateKind>> imports_;
};

/// Process-wide synthesizer with default options.
Synthesizer& default_synthesizer();

inline CliffordTSequence synthesize_rz(double theta, int bits) {
  return default_synthesizer().synthesize_rz(theta, bits);
}

/// Lowers two-qubit rotations and controlled phases, then replaces every
/// RZ, phase and phase-block gate by Clifford+T gates, and finally merges
/// diagonal runs and cancels Hadamard pairs per qubit. Conditions carry over
/// to every emitted gate. The output alphabet is X, Z, H, S, Sdg, T, Tdg,
/// CNOT, Measure (plus Reset when present in the input).
LogicalCircuit lower_circuit(const LogicalCircuit& c, int bits,
                             Synthesizer& synth = default_synthesizer());

/// Per-qubit peephole: merges adjacent diagonal gates that share a
/// condition into canonical spellings and cancels adjacent H pairs.
LogicalCircuit simplify_circuit(const LogicalCircuit& c);

/// Rewrites each maximal run of adjacent same-qubit diagonal gates with a
/// common condition into one PhaseBlock (Z^a S^b T^c); runs that multiply
/// to the identity disappear.
LogicalCircuit collapse_tlike(const LogicalCircuit& c);

}  // namespace lsqpe
