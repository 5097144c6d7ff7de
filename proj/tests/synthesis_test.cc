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

#include "lsqpe/synthesis.h"

#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <random>

#include "lsqpe/qpe.h"
#include "lsqpe/ring.h"
#include "lsqpe/sim.h"
#include "test_util.h"

using namespace lsqpe;
using lsqpe::testing::phase_aligned_error;

namespace {

constexpr double kPi = std::numbers::pi;

// RZ written out by hand, independent of the library helper.
Eigen::Matrix2cd rz_oracle(double theta) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  m(0, 0) = std::polar(1.0, -theta / 2);
  m(1, 1) = std::polar(1.0, theta / 2);
  return m;
}

// Runs the sequence through the state-vector simulator on one qubit.
Eigen::MatrixXcd simulated_unitary(const std::vector<GateKind>& gates) {
  LogicalCircuit c(1, 0);
  for (GateKind g : gates) c.push(Instruction::gate(g, 0));
  return circuit_unitary(c);
}

Eigen::Matrix2cd to_eigen(const ExactMat2& m) {
  auto a = m.to_complex();
  Eigen::Matrix2cd out;
  out << a[0], a[1], a[2], a[3];
  return out;
}

// Every Clifford+T class (mod global phase) with minimal T-count <= max_t,
// found by 0-1 breadth-first search over words in H, S, T. Values are
// the minimal T-counts.
struct Enumerated {
  std::map<std::string, int> t_count;
  std::vector<std::pair<ExactMat2, int>> classes;
};

Enumerated enumerate_words(int max_t) {
  Enumerated out;
  std::deque<std::pair<ExactMat2, int>> queue;
  queue.emplace_back(ExactMat2::identity(), 0);
  const ExactMat2 gens[] = {ExactMat2::gate(GateKind::H), ExactMat2::gate(GateKind::S),
                            ExactMat2::gate(GateKind::T)};
  while (!queue.empty()) {
    auto [m, cost] = queue.front();
    queue.pop_front();
    ExactMat2 canon = m.canonical_mod_phase();
    auto key = canon.key();
    if (out.t_count.contains(key)) continue;
    out.t_count[key] = cost;
    out.classes.emplace_back(canon, cost);
    for (int g = 0; g < 3; ++g) {
      ExactMat2 next = m * gens[g];
      if (g == 2) {
        if (cost + 1 <= max_t) queue.emplace_back(next, cost + 1);
      } else {
        queue.emplace_front(next, cost);
      }
    }
  }
  return out;
}

const Enumerated& enumerated_up_to_6() {
  static const Enumerated e = enumerate_words(6);
  return e;
}

}  // namespace

TEST(Ring, ArithmeticIdentities) {
  RingElement w = RingElement::omega();
  RingElement w2 = w * w;
  EXPECT_EQ(w2, RingElement::imaginary_unit());
  RingElement w8 = w2 * w2 * w2 * w2;
  EXPECT_EQ(w8, RingElement::integer(1));
  RingElement r = RingElement::inv_sqrt2();
  EXPECT_EQ(r * r + r * r, RingElement::integer(1));
  EXPECT_EQ(w * w.conj(), RingElement::integer(1));
  EXPECT_TRUE((w - w).is_zero());
  auto z = w.to_complex();
  EXPECT_NEAR(z.real(), std::cos(kPi / 4), 1e-15);
  EXPECT_NEAR(z.imag(), std::sin(kPi / 4), 1e-15);
}

TEST(Ring, GateMatricesMatchFloatingPoint) {
  for (GateKind g : {GateKind::X, GateKind::Z, GateKind::H, GateKind::S, GateKind::Sdg,
                     GateKind::T, GateKind::Tdg}) {
    Eigen::Matrix2cd exact = to_eigen(ExactMat2::gate(g));
    Eigen::Matrix2cd fp = single_qubit_matrix(Instruction::gate(g, 0));
    EXPECT_LT((exact - fp).cwiseAbs().maxCoeff(), 1e-15) << gate_name(g);
  }
}

TEST(Ring, CliffordTRelations) {
  auto H = ExactMat2::gate(GateKind::H), S = ExactMat2::gate(GateKind::S),
       T = ExactMat2::gate(GateKind::T), Z = ExactMat2::gate(GateKind::Z);
  EXPECT_EQ(T * T, S);
  EXPECT_EQ(S * S, Z);
  EXPECT_EQ(H * H, ExactMat2::identity());
  EXPECT_EQ(T * ExactMat2::gate(GateKind::Tdg), ExactMat2::identity());
  // (SH)^3 = omega * I, so it is the identity class modulo phase.
  auto sh = S * H;
  EXPECT_EQ((sh * sh * sh).canonical_mod_phase(), ExactMat2::identity().canonical_mod_phase());
  EXPECT_NE(T.canonical_mod_phase(), ExactMat2::identity().canonical_mod_phase());
}

TEST(NormalForms, ClassCountsMatchNormalFormCount) {
  // Distinct classes with minimal T-count n: 24 for n = 0, 36 * 2^n above.
  const auto& e = enumerated_up_to_6();
  std::map<int, int> per_t;
  for (const auto& [key, t] : e.t_count) ++per_t[t];
  EXPECT_EQ(per_t[0], 24);
  for (int n = 1; n <= 6; ++n) EXPECT_EQ(per_t[n], 36 << n) << "T-count " << n;
}

TEST(NormalForms, TableSizeMatchesEnumeration) {
  Synthesizer s;
  std::size_t expected = 24;
  for (int n = 1; n <= s.options().table_t_count; ++n) expected += std::size_t{36} << n;
  EXPECT_EQ(s.table_size(), expected);
}

TEST(Distance, Examples) {
  Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  EXPECT_NEAR(phase_invariant_distance(id, id), 0, 1e-12);
  EXPECT_NEAR(phase_invariant_distance(id, std::polar(1.0, kPi / 7) * id), 0, 1e-7);
  Eigen::Matrix2cd z = Eigen::Matrix2cd::Identity();
  z(1, 1) = -1;
  EXPECT_NEAR(phase_invariant_distance(id, z), 1, 1e-12);
  Eigen::Matrix2cd bad = 2 * id;
  EXPECT_THROW(phase_invariant_distance(id, bad), std::invalid_argument);
}

TEST(Synthesize, DyadicAnglesAreExact) {
  for (int k = -8; k <= 8; ++k) {
    for (int bits : {1, 5, 20}) {
      auto seq = synthesize_rz(k * kPi / 4, bits);
      EXPECT_EQ(seq.epsilon, 0.0);
      EXPECT_LE(seq.t_count, 1);
      EXPECT_LT(phase_invariant_distance(simulated_unitary(seq.gates), rz_oracle(k * kPi / 4)),
                1e-7);
    }
  }
  EXPECT_EQ(synthesize_rz(kPi / 4, 7).gates, std::vector<GateKind>{GateKind::T});
  EXPECT_TRUE(synthesize_rz(0.0, 7).gates.empty());
}

TEST(Synthesize, PiOverEightAtThreeBits) {
  auto seq = synthesize_rz(kPi / 8, 3);
  EXPECT_LE(seq.epsilon, 0.125);
  EXPECT_LE(phase_invariant_distance(simulated_unitary(seq.gates), rz_oracle(kPi / 8)),
            0.125 + 1e-9);
  EXPECT_EQ(seq.t_count, 4);
}

// The reference three-bit word "T H T H T H T S H T H T S H T H T H T† Z"
// lands on Z * RZ(pi/8) rather than RZ(pi/8): its distance to RZ(pi/8) is
// about 0.998 in either reading order. Dropping the trailing Z (equivalently
// comparing against Z * RZ(pi/8)) gives a valid three-bit answer.
TEST(Synthesize, ReferenceThreeBitWordIsOffByTrailingZ) {
  auto word = parse_gate_string("T H T H T H T S H T H T S H T H T H T† Z");
  ASSERT_EQ(word.size(), 20u);
  EXPECT_EQ(std::count(word.begin(), word.end(), GateKind::T) +
                std::count(word.begin(), word.end(), GateKind::Tdg),
            9);
  Eigen::Matrix2cd target = rz_oracle(kPi / 8);
  EXPECT_GT(phase_invariant_distance(simulated_unitary(word), target), 0.9);

  auto trimmed = word;
  ASSERT_EQ(trimmed.back(), GateKind::Z);
  trimmed.pop_back();
  EXPECT_LE(phase_invariant_distance(simulated_unitary(trimmed), target), 0.125);
  std::vector<GateKind> reversed(trimmed.rbegin(), trimmed.rend());
  EXPECT_LE(phase_invariant_distance(simulated_unitary(reversed), target), 0.125);
  // The search never needs more T gates than this word.
  EXPECT_LE(synthesize_rz(kPi / 8, 3).t_count, 10);
}

TEST(Synthesize, H2AngleAtTenBits) {
  auto h = h2_hamiltonian();
  double t = scale_time(h, TimeConvention::PiOverSum);
  double theta1 = t * h.terms[0].coeff / 2;
  auto seq = synthesize_rz(theta1, 10);
  EXPECT_GE(seq.t_count, 20);
  EXPECT_LE(seq.t_count, 45);
  EXPECT_LE(phase_invariant_distance(simulated_unitary(seq.gates), rz_oracle(theta1)),
            std::ldexp(1.0, -10) + 1e-9);
}

TEST(Synthesize, Deterministic) {
  Synthesizer a, b;
  for (double theta : {0.3, 1.1, -2.0, 5.5}) {
    auto x = a.synthesize_rz(theta, 6);
    auto y = b.synthesize_rz(theta, 6);
    EXPECT_EQ(x.gates, y.gates);
    EXPECT_EQ(x.gates, a.synthesize_rz(theta, 6).gates);  // cached path
  }
}

TEST(Synthesize, AngleWrapsModuloTwoPi) {
  auto x = synthesize_rz(0.7, 5);
  auto y = synthesize_rz(0.7 + 2 * kPi, 5);
  EXPECT_EQ(x.gates, y.gates);
}

TEST(Synthesize, SequenceFieldsAreConsistent) {
  auto seq = synthesize_rz(2.2, 7);
  int t = 0;
  for (GateKind g : seq.gates) {
    t += g == GateKind::T || g == GateKind::Tdg;
    EXPECT_TRUE(g == GateKind::H || g == GateKind::S || g == GateKind::Sdg || g == GateKind::T ||
                g == GateKind::Tdg || g == GateKind::X || g == GateKind::Z);
  }
  EXPECT_EQ(seq.t_count, t);
  EXPECT_NEAR(seq.epsilon, phase_invariant_distance(simulated_unitary(seq.gates), rz_oracle(2.2)),
              1e-9);
}

TEST(Synthesize, TCountIsMinimalAgainstBruteForce) {
  // Every class with fewer T gates than the returned word must miss the
  // target ball; enumeration covers all words up to T-count 6.
  const auto& e = enumerated_up_to_6();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> angle(0, 2 * kPi);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    double theta = angle(rng);
    int bits = 2 + trial % 3;
    double eps = std::ldexp(1.0, -bits);
    auto seq = synthesize_rz(theta, bits);
    if (seq.t_count > 7) continue;
    ++checked;
    Eigen::Matrix2cd target = rz_oracle(theta);
    double best_below = 2;
    for (const auto& [m, t] : e.classes) {
      if (t >= seq.t_count) continue;
      best_below = std::min(best_below, phase_invariant_distance(to_eigen(m), target));
    }
    EXPECT_GT(best_below, eps) << "theta " << theta << " bits " << bits;
  }
  EXPECT_GT(checked, 30);
}

TEST(Synthesize, BudgetExceeded) {
  SynthesisOptions opts;
  opts.table_t_count = 4;
  opts.max_t_count = 6;
  Synthesizer s(opts);
  EXPECT_THROW(s.synthesize_rz(0.123, 12), SynthesisBudgetExceeded);
  EXPECT_THROW(s.synthesize_rz(0.1, 0), std::invalid_argument);
}

TEST(Synthesize, ImportsArePreferredWhenAccurate) {
  SynthesisOptions opts;
  opts.table_t_count = 4;
  opts.max_t_count = 6;
  Synthesizer s(opts);
  // An accurate long word from a full-size search, fed back as an import.
  auto good = synthesize_rz(0.123, 8);
  char key[64];
  std::snprintf(key, sizeof key, "%.12f", 0.123);

  auto dir = std::filesystem::temp_directory_path() / "lsqpe_import_test";
  std::filesystem::create_directories(dir);
  auto path = dir / "imports.json";
  {
    std::ofstream out(path);
    out << "{\"" << key << "\": \"" << good.str() << "\", \"0.500000000000\": \"H\"}";
  }
  s.load_import_file(path.string());
  auto got = s.synthesize_rz(0.123, 8);
  EXPECT_EQ(got.gates, good.gates);
  // An inaccurate import is ignored and the search runs instead.
  EXPECT_NE(s.synthesize_rz(0.5, 2).gates, std::vector<GateKind>{GateKind::H});
  EXPECT_THROW(s.load_import_file((dir / "missing.json").string()), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST(Synthesize, ParseGateString) {
  EXPECT_EQ(parse_gate_string("H S† T† Sdg Tdg X Z I"),
            (std::vector<GateKind>{GateKind::H, GateKind::Sdg, GateKind::Tdg, GateKind::Sdg,
                                   GateKind::Tdg, GateKind::X, GateKind::Z}));
  EXPECT_THROW(parse_gate_string("H Q"), std::invalid_argument);
}

TEST(Synthesize, DyadicSpellings) {
  for (int k = 0; k < 8; ++k) {
    auto gates = dyadic_phase_spelling(k);
    Eigen::Matrix2cd want = Eigen::Matrix2cd::Identity();
    want(1, 1) = std::polar(1.0, k * kPi / 4);
    EXPECT_LT(phase_aligned_error(simulated_unitary(gates), want), 1e-12) << k;
    EXPECT_LE(gates.size(), 2u);
  }
}

// Property (d): every synthesized word meets its precision.
TEST(SynthesisProperty, RandomAnglesMeetTheirPrecision) {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
  std::uniform_int_distribution<int> bits_dist(1, 8);
  for (int i = 0; i < 220; ++i) {
    double theta = angle(rng);
    int bits = bits_dist(rng);
    auto seq = synthesize_rz(theta, bits);
    double d = phase_invariant_distance(simulated_unitary(seq.gates), rz_oracle(theta));
    EXPECT_LE(d, std::ldexp(1.0, -bits) + 1e-9) << "theta " << theta << " bits " << bits;
  }
}

// Mean T-count over 20 random angles tracks roughly 3b. The upper bound
// 4b + 10 holds everywhere. T-optimal search beats the 2b floor at b = 4
// (the floor comes from a heuristic for a non-optimal synthesizer), so the
// floor is asserted from b = 6 on and b = 4 is covered by the brute-force
// minimality test instead.
TEST(SynthesisProperty, MeanTCountScaling) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> angle(0, 2 * kPi);
  for (int b : {4, 6, 8, 10}) {
    double sum = 0;
    for (int i = 0; i < 20; ++i) sum += synthesize_rz(angle(rng), b).t_count;
    double mean = sum / 20;
    EXPECT_LE(mean, 4 * b + 10) << "b " << b;
    if (b >= 6) EXPECT_GE(mean, 2 * b) << "b " << b;
  }
}

TEST(CollapseTlike, Examples) {
  auto block_of = [](std::vector<GateKind> gates) {
    LogicalCircuit c(1, 0);
    for (GateKind g : gates) c.push(Instruction::gate(g, 0));
    return collapse_tlike(c);
  };
  auto ts = block_of({GateKind::T, GateKind::S});
  ASSERT_EQ(ts.ops.size(), 1u);
  EXPECT_EQ(ts.ops[0].kind, GateKind::PhaseBlock);
  auto ts_block = TLikeBlock::from_eighths(ts.ops[0].phase8);
  EXPECT_TRUE(ts_block.has_t);
  EXPECT_TRUE(ts_block.has_s);
  EXPECT_FALSE(ts_block.has_z);

  auto tt = block_of({GateKind::T, GateKind::T});
  ASSERT_EQ(tt.ops.size(), 1u);
  EXPECT_EQ(tt.ops[0].phase8, 2);  // S

  auto sdg = block_of({GateKind::Sdg});
  ASSERT_EQ(sdg.ops.size(), 1u);
  auto sdg_block = TLikeBlock::from_eighths(sdg.ops[0].phase8);
  EXPECT_TRUE(sdg_block.has_z);
  EXPECT_TRUE(sdg_block.has_s);
  EXPECT_FALSE(sdg_block.has_t);

  EXPECT_TRUE(block_of({GateKind::T, GateKind::Tdg}).ops.empty());
  EXPECT_TRUE(block_of({GateKind::S, GateKind::S, GateKind::Z}).ops.empty());
}

TEST(CollapseTlike, TDaggerIsZST) {
  auto b = TLikeBlock::from_eighths(7);
  EXPECT_TRUE(b.has_z && b.has_s && b.has_t);
  for (int k = 0; k < 8; ++k) EXPECT_EQ(TLikeBlock::from_eighths(k).eighths(), k);
  EXPECT_EQ(TLikeBlock::from_eighths(-1).eighths(), 7);
  EXPECT_TRUE(TLikeBlock::from_eighths(8).empty());
}

TEST(CollapseTlike, ConditionsSplitRuns) {
  LogicalCircuit c(2, 1);
  c.push(Instruction::measure(1, 0));
  c.push(Instruction::gate(GateKind::T, 0));
  c.push(Instruction::gate(GateKind::S, 0).conditioned_on(0));
  c.push(Instruction::gate(GateKind::T, 0));
  auto out = collapse_tlike(c);
  ASSERT_EQ(out.ops.size(), 4u);
  EXPECT_FALSE(out.ops[1].condition);
  EXPECT_EQ(out.ops[2].condition, std::optional<std::uint32_t>{0});
}

// Property (b): collapse preserves segment unitaries and leaves no two
// adjacent same-qubit diagonal gates.
TEST(CollapseProperty, PreservesUnitaryAndMergesRuns) {
  std::mt19937_64 rng(7);
  const GateKind pool[] = {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg,
                           GateKind::Z, GateKind::X};
  std::uniform_int_distribution<int> pick(0, 7), qubit(0, 1), len(1, 25);
  for (int trial = 0; trial < 220; ++trial) {
    LogicalCircuit c(2, 0);
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int g = pick(rng);
      if (g == 7) {
        std::uint32_t a = qubit(rng);
        c.push(Instruction::cnot(a, 1 - a));
      } else {
        c.push(Instruction::gate(pool[g], qubit(rng)));
      }
    }
    auto out = collapse_tlike(c);
    EXPECT_LT(phase_aligned_error(circuit_unitary(out), circuit_unitary(c)), 1e-9);
    std::map<std::uint32_t, const Instruction*> last;
    for (const auto& op : out.ops) {
      for (auto q : op.qubits) {
        auto it = last.find(q);
        if (it != last.end() && op.qubits.size() == 1) {
          EXPECT_FALSE(op.diagonal_eighths() && it->second->diagonal_eighths() &&
                       it->second->qubits.size() == 1)
              << "adjacent diagonals in trial " << trial;
        }
        last[q] = &op;
      }
    }
  }
}

TEST(SimplifyProperty, PreservesUnitary) {
  std::mt19937_64 rng(8);
  const GateKind pool[] = {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg,
                           GateKind::Z, GateKind::X};
  std::uniform_int_distribution<int> pick(0, 7), qubit(0, 1), len(1, 25);
  for (int trial = 0; trial < 220; ++trial) {
    LogicalCircuit c(2, 0);
    int n = len(rng);
    for (int i = 0; i < n; ++i) {
      int g = pick(rng);
      if (g == 7) {
        std::uint32_t a = qubit(rng);
        c.push(Instruction::cnot(a, 1 - a));
      } else {
        c.push(Instruction::gate(pool[g], qubit(rng)));
      }
    }
    auto out = simplify_circuit(c);
    EXPECT_LE(out.ops.size(), c.ops.size());
    EXPECT_LT(phase_aligned_error(circuit_unitary(out), circuit_unitary(c)), 1e-9);
  }
}

TEST(LowerCircuit, CliffordOnlyCircuitUnchanged) {
  LogicalCircuit c(2, 1);
  c.push(Instruction::gate(GateKind::H, 0));
  c.push(Instruction::cnot(0, 1));
  c.push(Instruction::gate(GateKind::S, 1));
  c.push(Instruction::gate(GateKind::X, 0));
  c.push(Instruction::measure(0, 0));
  c.push(Instruction::gate(GateKind::Z, 1).conditioned_on(0));
  EXPECT_EQ(lower_circuit(c, 10), c);
}

TEST(LowerCircuit, FreeRotationBecomesCliffordT) {
  LogicalCircuit c(2, 0);
  c.push(Instruction::gate(GateKind::H, 0));
  c.push(Instruction::gate(GateKind::H, 1));
  c.push(Instruction::pauli_rot({0, 1}, PhasedPauli::parse("ZX"), Angle::radians(0.9)));
  c.push(Instruction::cphase(0, 1, Angle::radians(-0.4)));
  auto out = lower_circuit(c, 8);
  for (const auto& op : out.ops) {
    EXPECT_TRUE(op.kind == GateKind::X || op.kind == GateKind::Z || op.kind == GateKind::H ||
                op.kind == GateKind::S || op.kind == GateKind::Sdg || op.kind == GateKind::T ||
                op.kind == GateKind::Tdg || op.kind == GateKind::CNOT)
        << op.str();
  }
  // Three synthesized rotations at 2^-8 each bound the total error.
  EXPECT_LT(phase_invariant_distance(circuit_unitary(out), circuit_unitary(c)), 4 * std::ldexp(1.0, -8));
}

TEST(LowerCircuit, H2IterativeAtTenBits) {
  auto ideal = build_iterative_qpe(h2_hamiltonian(), QpeSpec{});
  auto low = lower_circuit(ideal, 10);
  auto n = low.counts();
  EXPECT_GE(n.total(), 823u);
  EXPECT_LE(n.total(), 1235u);
  EXPECT_GE(n.t, 310u);
  EXPECT_LE(n.t, 465u);
  EXPECT_EQ(n.cnot, 34u);
  EXPECT_EQ(n.measure, 3u);
  EXPECT_EQ(n.other, 0u);
  EXPECT_LE(tvd(exact_distribution(ideal), exact_distribution(low)), 1.5e-2);
}

// T-optimal words are shorter than the randomized words behind the reference
// 740 gates, so only the upper edge of the +-20% band holds here.
TEST(LowerCircuit, H2IterativeAtFiveBitsIsBelowReferenceUpperEdge) {
  auto low = lower_circuit(build_iterative_qpe(h2_hamiltonian(), QpeSpec{}), 5);
  EXPECT_LE(low.counts().total(), 888u);
  EXPECT_LT(low.counts().total(), lower_circuit(build_iterative_qpe(h2_hamiltonian(), QpeSpec{}), 10)
                                      .counts()
                                      .total());
}
