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

// Acceptance run: one PASS/FAIL line per criterion 1-9.
//
// The exit status is 0 when the failing criteria are exactly the ones named
// by --expect-fail, so a known and documented red criterion keeps its FAIL
// line without breaking the test run, and any change in either direction
// (a new failure, or a known failure that starts passing) is reported.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <complex>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <random>
#include <set>

#include "lsqpe/estimator.h"
#include "lsqpe/io.h"
#include "lsqpe/mover.h"
#include "lsqpe/qpe.h"
#include "lsqpe/render.h"
#include "lsqpe/sim.h"
#include "lsqpe/surgery.h"
#include "lsqpe/synthesis.h"
#include "test_util.h"

namespace lsqpe {
namespace {

using Clock = std::chrono::steady_clock;
using lsqpe::testing::expm_rotation;
using lsqpe::testing::phase_aligned_error;

constexpr double kPi = std::numbers::pi;

std::string data(const std::string& name) { return std::string(LSQPE_DATA_DIR) + "/" + name; }
std::string fixture(const std::string& name) { return std::string(LSQPE_FIXTURE_DIR) + "/" + name; }

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Reference resource table, column order: direct 1e-3, direct 1e-4,
// moved 1e-3, moved 1e-4.
struct Column {
  Method method;
  double p;
  int distance;
  std::int64_t circuit_qubits;
  int interval, factories;
  std::int64_t factory_qubits, storage_qubits, total_qubits, rounds;
  double logical_error, tstate_error, total_error;
};

const Column kTable[] = {
    {Method::Direct, 1e-3, 12, 1352, 53, 1, 2066, 288, 3706, 31179, 4.8e-3, 3.1e-3, 8.1e-3},
    {Method::Direct, 1e-4, 6, 392, 29, 1, 522, 72, 986, 17271, 8.6e-4, 1.8e-3, 2.6e-3},
    {Method::Moved, 1e-3, 11, 1776, 12, 3, 6198, 726, 8700, 4665, 4.2e-3, 3.1e-3, 7.3e-3},
    {Method::Moved, 1e-4, 5, 456, 6, 4, 2088, 200, 2744, 2331, 2.3e-3, 1.8e-3, 4.1e-3},
};

std::string column_name(const Column& c) { return fmt::format("{} p={:g}", method_name(c.method), c.p); }

struct Inputs {
  FactoryCatalog catalog = FactoryCatalog::load(data("factories.json"));
  std::string counts_text = read_text(data("h2_counts.json"));
  OperationCounts counts(Method m) const { return load_counts(counts_text, m); }
  EstimateReport solve(const Column& c) const { return solve_distance(c.method, c.p, counts(c.method), catalog); }
};

Outcome criterion1(const Inputs& in) {
  auto t0 = Clock::now();
  std::vector<EstimateReport> reports;
  for (const auto& c : kTable) reports.push_back(in.solve(c));
  double elapsed = seconds_since(t0);
  std::vector<std::string> bad;
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& c = kTable[i];
    const auto& r = reports[i];
    auto check = [&](const char* field, std::int64_t got, std::int64_t want) {
      if (got != want) bad.push_back(fmt::format("{} {} {} != {}", column_name(c), field, got, want));
    };
    check("distance", r.distance, c.distance);
    check("circuit qubits", r.circuit_qubits, c.circuit_qubits);
    check("interval", r.interval, c.interval);
    check("factories", r.factory_count, c.factories);
    check("factory qubits", r.factory_qubits, c.factory_qubits);
    check("storage qubits", r.storage_qubits, c.storage_qubits);
    check("total qubits", r.total_qubits, c.total_qubits);
    check("rounds", r.total_rounds, c.rounds);
  }
  if (elapsed >= 1.0) bad.push_back(fmt::format("runtime {:.3f} s", elapsed));
  if (!bad.empty()) return {false, fmt::format("{}", fmt::join(bad, "; "))};
  return {true, fmt::format("32 integer fields exact over 4 columns in {:.1f} ms", elapsed * 1e3)};
}

Outcome criterion2(const Inputs& in) {
  std::vector<std::string> bad;
  double worst = 0;
  std::string worst_at;
  for (const auto& c : kTable) {
    auto r = in.solve(c);
    auto check = [&](const char* field, double got, double want) {
      double rel = std::abs(got / want - 1);
      if (rel > worst) {
        worst = rel;
        worst_at = fmt::format("{} {} {:.3e} vs {:.1e}", column_name(c), field, got, want);
      }
      if (rel > 0.08) bad.push_back(fmt::format("{} {} {:.3e} vs {:.1e}", column_name(c), field, got, want));
    };
    check("logical", r.logical_error, c.logical_error);
    check("T-state", r.tstate_error, c.tstate_error);
    check("total", r.total_error, c.total_error);
  }
  if (!bad.empty()) return {false, fmt::format("{}", fmt::join(bad, "; "))};
  return {true, fmt::format("12 fields within 8%, widest {:.1f}% ({})", worst * 100, worst_at)};
}

Outcome criterion3(const Inputs& in) {
  std::vector<int> direct_bad, moved_bad;
  std::int64_t offset = 0;
  for (int d = 3; d <= 25; ++d) {
    auto direct = total_rounds(in.counts(Method::Direct), LayoutSpec::make(Method::Direct, d));
    auto moved = total_rounds(in.counts(Method::Moved), LayoutSpec::make(Method::Moved, d));
    if (direct != 2318 * d + 3363) {
      direct_bad.push_back(d);
      offset = direct - (2318 * d + 3363);
    }
    if (moved != 389 * d + 386) moved_bad.push_back(d);
  }
  if (direct_bad.empty() && moved_bad.empty()) return {true, "46 totals match 2318d+3363 and 389d+386"};
  std::string detail;
  if (!moved_bad.empty()) detail += fmt::format("moved differs at d={}; ", fmt::join(moved_bad, ","));
  if (!direct_bad.empty()) {
    detail += fmt::format(
        "direct exceeds 2318d+3363 by {} at d={} (half-distance stages round up for odd d: 12 S and 386 "
        "T-like corrections at ceil(d/2)); even d and all moved totals match",
        offset, fmt::join(direct_bad, ","));
  }
  return {false, detail};
}

Outcome criterion4(const Inputs& in) {
  const std::vector<double> ps = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3};
  std::vector<std::string> bad;
  for (Method m : {Method::Direct, Method::Moved}) {
    auto points = sweep(m, ps, in.counts(m), in.catalog);
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (!points[i].report) {
        bad.push_back(fmt::format("{} p={:g}: {}", method_name(m), ps[i], points[i].error));
        continue;
      }
      if (i > 0 && points[i - 1].report) {
        const auto& lo = *points[i - 1].report;
        const auto& hi = *points[i].report;
        if (lo.total_qubits > hi.total_qubits || lo.total_rounds > hi.total_rounds) {
          bad.push_back(fmt::format("{} not monotone between p={:g} and p={:g}", method_name(m), ps[i - 1], ps[i]));
        }
      }
    }
    for (const auto& c : kTable) {
      if (c.method != m) continue;
      std::size_t i = c.p == 1e-4 ? 0 : 3;
      if (!points[i].report) continue;
      const auto& r = *points[i].report;
      if (r.total_qubits != c.total_qubits || r.total_rounds != c.rounds || r.distance != c.distance) {
        bad.push_back(fmt::format("{} endpoint differs from the table", column_name(c)));
      }
    }
  }
  if (!bad.empty()) return {false, fmt::format("{}", fmt::join(bad, "; "))};
  return {true, "qubits and rounds non-increasing as p falls for both methods; 1e-4 and 1e-3 match the table"};
}

Outcome criterion5() {
  auto t0 = Clock::now();
  auto ideal = build_iterative_qpe(h2_hamiltonian(), QpeSpec{});
  auto reference = exact_distribution(ideal);
  double tvd5 = tvd(reference, exact_distribution(lower_circuit(ideal, 5)));
  double tvd10 = tvd(reference, exact_distribution(lower_circuit(ideal, 10)));
  double elapsed = seconds_since(t0);
  bool ok5 = tvd5 >= 0.012 && tvd5 <= 0.036;
  bool ok10 = tvd10 <= 1.5e-2;
  bool fast = elapsed < 120;
  std::string detail = fmt::format("bits=5 TVD {:.4f} ({} [0.012, 0.036]); bits=10 TVD {:.4f} ({} 1.5e-2); {:.2f} s",
                                   tvd5, ok5 ? "in" : "outside", tvd10, ok10 ? "<=" : ">", elapsed);
  if (!ok5) {
    detail += "; deterministic synthesis reuses one word per distinct angle, so the 17 rotation errors add coherently";
  }
  return {ok5 && ok10 && fast, detail};
}

Outcome criterion6() {
  auto low = lower_circuit(build_iterative_qpe(h2_hamiltonian(), QpeSpec{}), 10);
  auto n = low.counts();
  bool total_ok = n.total() >= 823 && n.total() <= 1235;
  bool t_ok = n.t >= 310 && n.t <= 465;
  return {total_ok && t_ok, fmt::format("bits=10 total {} (band [823, 1235]), T-type {} (band [310, 465])",
                                        n.total(), n.t)};
}

// Hand-written single-qubit gate matrices, independent of the simulator.
Eigen::Matrix2cd gate_oracle(GateKind g) {
  using C = std::complex<double>;
  const double r = 1 / std::sqrt(2.0);
  Eigen::Matrix2cd m;
  switch (g) {
    case GateKind::H: m << r, r, r, -r; break;
    case GateKind::S: m << 1, 0, 0, C(0, 1); break;
    case GateKind::Sdg: m << 1, 0, 0, C(0, -1); break;
    case GateKind::T: m << 1, 0, 0, std::polar(1.0, kPi / 4); break;
    case GateKind::Tdg: m << 1, 0, 0, std::polar(1.0, -kPi / 4); break;
    case GateKind::X: m << 0, 1, 1, 0; break;
    case GateKind::Z: m << 1, 0, 0, -1; break;
    default: throw std::logic_error("no oracle for " + gate_name(g));
  }
  return m;
}

Eigen::MatrixXcd full_pauli(const std::vector<Pauli>& letters) {
  using C = std::complex<double>;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  // Qubit 0 is the least significant bit of the state index.
  for (Pauli p : letters) {
    Eigen::Matrix2cd m;
    switch (p) {
      case Pauli::I: m << 1, 0, 0, 1; break;
      case Pauli::X: m << 0, 1, 1, 0; break;
      case Pauli::Y: m << 0, C(0, -1), C(0, 1), 0; break;
      case Pauli::Z: m << 1, 0, 0, -1; break;
    }
    Eigen::MatrixXcd next(out.rows() * 2, out.cols() * 2);
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) = m(a, b) * out;
    }
    out = next;
  }
  return out;
}

// Random Clifford+T circuit; with `measure`, measurements and conditions on
// bits already written are mixed in.
LogicalCircuit random_circuit(std::mt19937_64& rng, std::uint32_t n, int len, bool measure) {
  const GateKind pool[] = {GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::X,
                           GateKind::Z};
  std::uniform_int_distribution<int> pick(0, 9), coin(0, 3);
  std::uniform_int_distribution<std::uint32_t> qubit(0, n - 1);
  LogicalCircuit c(n, measure ? 3 : 0);
  std::uint32_t written = 0;
  for (int i = 0; i < len; ++i) {
    int g = pick(rng);
    Instruction op;
    if (g < 7) {
      op = Instruction::gate(pool[g], qubit(rng));
    } else if (g < 9 && n > 1) {
      std::uint32_t a = qubit(rng), b = qubit(rng);
      if (a == b) b = (a + 1) % n;
      op = Instruction::cnot(a, b);
    } else if (measure && written < 3) {
      c.push(Instruction::measure(qubit(rng), written++));
      continue;
    } else {
      op = Instruction::gate(GateKind::T, qubit(rng));
    }
    if (measure && written > 0 && coin(rng) == 0) {
      op = op.conditioned_on(std::uniform_int_distribution<std::uint32_t>(0, written - 1)(rng));
    }
    c.push(op);
  }
  while (measure && written < 3) c.push(Instruction::measure(qubit(rng), written++));
  return c;
}

Outcome criterion7() {
  constexpr int kCases = 240;
  constexpr double kTol = 1e-9;
  std::vector<std::string> parts;
  bool pass = true;

  {  // (a) two-qubit rotation and controlled-phase lowerings
    std::mt19937_64 rng(501);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    std::uniform_int_distribution<int> letter(1, 3), width(1, 3), coin(0, 3), dyadic(0, 7);
    double worst = 0;
    for (int i = 0; i < kCases; ++i) {
      LogicalCircuit c(3, 0);
      Eigen::MatrixXcd want;
      if (coin(rng) == 0) {
        std::uint32_t a = i % 3, b = (a + 1 + (i / 3) % 2) % 3;
        Angle th = coin(rng) == 0 ? Angle::eighths(dyadic(rng)) : Angle::radians(angle(rng));
        c.push(Instruction::cphase(a, b, th));
        want = Eigen::MatrixXcd::Identity(8, 8);
        for (int s = 0; s < 8; ++s) {
          if ((s >> a & 1) && (s >> b & 1)) want(s, s) = std::polar(1.0, th.value());
        }
      } else {
        std::vector<std::uint32_t> qs = {0, 1, 2};
        std::shuffle(qs.begin(), qs.end(), rng);
        qs.resize(width(rng));
        std::vector<Pauli> local, full(3, Pauli::I);
        for (auto q : qs) {
          local.push_back(static_cast<Pauli>(letter(rng)));
          full[q] = local.back();
        }
        double th = angle(rng);
        c.push(Instruction::pauli_rot(qs, PhasedPauli(local), Angle::radians(th)));
        want = expm_rotation(full_pauli(full), th);
      }
      worst = std::max(worst, phase_aligned_error(circuit_unitary(lower_two_qubit_rotations(c)), want));
    }
    pass &= worst < kTol;
    parts.push_back(fmt::format("(a) {} lowerings, worst {:.1e}", kCases, worst));
  }

  {  // (b) T-like collapse keeps segment unitaries
    std::mt19937_64 rng(502);
    std::uniform_int_distribution<int> width(1, 3), len(1, 30);
    double worst = 0;
    for (int i = 0; i < kCases; ++i) {
      auto c = random_circuit(rng, width(rng), len(rng), false);
      worst = std::max(worst, phase_aligned_error(circuit_unitary(collapse_tlike(c)), circuit_unitary(c)));
    }
    pass &= worst < kTol;
    parts.push_back(fmt::format("(b) {} collapses, worst {:.1e}", kCases, worst));
  }

  {  // (c) moved programs keep exact output distributions
    std::mt19937_64 rng(503);
    std::uniform_int_distribution<int> width(1, 3), len(5, 40);
    double worst = 0;
    for (int i = 0; i < kCases; ++i) {
      auto c = random_circuit(rng, width(rng), len(rng), true);
      auto a = exact_distribution(c);
      auto b = exact_distribution(compile(c));
      for (const auto& [k, v] : a.probs) worst = std::max(worst, std::abs(v - b.at(k)));
      for (const auto& [k, v] : b.probs) worst = std::max(worst, std::abs(v - a.at(k)));
    }
    pass &= worst < kTol;
    parts.push_back(fmt::format("(c) {} moved circuits, worst {:.1e}", kCases, worst));
  }

  {  // (d) synthesized sequences meet their precision
    std::mt19937_64 rng(504);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    std::uniform_int_distribution<int> bits_dist(1, 10);
    int misses = 0;
    double worst_ratio = 0;
    for (int i = 0; i < kCases; ++i) {
      double theta = angle(rng);
      int bits = bits_dist(rng);
      auto seq = synthesize_rz(theta, bits);
      Eigen::Matrix2cd u = Eigen::Matrix2cd::Identity();
      for (GateKind g : seq.gates) u = gate_oracle(g) * u;
      Eigen::Matrix2cd rz = Eigen::Matrix2cd::Zero();
      rz(0, 0) = std::polar(1.0, -theta / 2);
      rz(1, 1) = std::polar(1.0, theta / 2);
      double dist = std::sqrt(std::max(0.0, 1 - std::abs((u.adjoint() * rz).trace()) / 2));
      double eps = std::ldexp(1.0, -bits);
      worst_ratio = std::max(worst_ratio, dist / eps);
      misses += dist > eps + kTol;
    }
    pass &= misses == 0;
    parts.push_back(fmt::format("(d) {} syntheses, {} misses, worst distance/eps {:.3f}", kCases, misses, worst_ratio));
  }
  return {pass, fmt::format("{}", fmt::join(parts, "; "))};
}

Outcome criterion8(const Inputs& in) {
  const auto catalog_json = nlohmann::json::parse(read_text(data("factories.json")));
  std::vector<std::string> bad, shown;
  for (const auto& c : kTable) {
    double factory_rounds = 0;
    for (const auto& f : catalog_json.at("factories")) {
      if (std::abs(f.at("physical_error_rate").get<double>() / c.p - 1) < 1e-9) {
        factory_rounds = f.at("rounds").get<double>();
      }
    }
    // Failure bound recomputed from its parts at distance d.
    auto failure = [&](int d) {
      bool direct = c.method == Method::Direct;
      int interval = direct ? 4 * d + 5 : d + 1;
      int factories = static_cast<int>(std::ceil(factory_rounds / interval - 1e-12));
      std::int64_t patches = (direct ? 4 : 6) + factories;
      auto rounds = total_rounds(in.counts(c.method), LayoutSpec::make(c.method, d));
      return static_cast<double>(patches) * static_cast<double>(rounds) * 0.1 *
             std::pow(100 * c.p, (d + 1) / 2.0);
    };
    auto r = in.solve(c);
    const double bound = Budget{}.logical();
    double above = failure(r.distance - 1), at = failure(r.distance);
    if (!(above > bound)) bad.push_back(fmt::format("{}: d-1 gives {:.3e} within the bound", column_name(c), above));
    if (!(at <= bound)) bad.push_back(fmt::format("{}: d gives {:.3e} above the bound", column_name(c), at));
    shown.push_back(fmt::format("{} d={}: {:.2e} > {:g} >= {:.2e}", column_name(c), r.distance, above, bound, at));
  }
  if (!bad.empty()) return {false, fmt::format("{}", fmt::join(bad, "; "))};
  return {true, fmt::format("{}", fmt::join(shown, "; "))};
}

Outcome criterion9() {
  PauliRotationProgram p;
  p.num_qubits = 2;
  ProgramEvent e;
  e.kind = EventKind::Rotation;
  e.rotation = PauliRotation::make(PhasedPauli::parse("YX"), Angle::eighths(1));
  p.events.push_back(e);
  const std::string idle = render_layout(LayoutSpec::make(Method::Direct, 3));
  const std::string yxz = render_layout(schedule(p, LayoutSpec::make(Method::Moved, 3)), std::size_t{0});
  bool a = idle == read_text(fixture("direct_d3_idle.svg"));
  bool b = yxz == read_text(fixture("moved_d3_yxz_measurement.svg"));
  return {a && b, fmt::format("direct_d3_idle.svg {}, moved_d3_yxz_measurement.svg {}", a ? "identical" : "differs",
                              b ? "identical" : "differs")};
}

}  // namespace
}  // namespace lsqpe

int main(int argc, char** argv) {
  using namespace lsqpe;
  CLI::App app{"Acceptance criteria 1-9"};
  std::vector<int> expected;
  app.add_option("--expect-fail", expected, "Criteria known to fail")->delimiter(',');
  CLI11_PARSE(app, argc, argv);

  Inputs inputs;
  const std::vector<std::function<Outcome()>> criteria = {
      [&] { return criterion1(inputs); }, [&] { return criterion2(inputs); }, [&] { return criterion3(inputs); },
      [&] { return criterion4(inputs); }, [] { return criterion5(); },        [] { return criterion6(); },
      [] { return criterion7(); },        [&] { return criterion8(inputs); }, [] { return criterion9(); },
  };
  std::set<int> failed;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    int n = static_cast<int>(i) + 1;
    if (!o.pass) failed.insert(n);
    std::cout << fmt::format("criterion {}: {}  {}", n, o.pass ? "PASS" : "FAIL", o.detail) << std::endl;
  }
  std::set<int> want(expected.begin(), expected.end());
  std::cout << fmt::format("summary: {} pass, {} fail", 9 - failed.size(), failed.size());
  if (!want.empty()) std::cout << fmt::format(" (expected failures: {})", fmt::join(want, ", "));
  std::cout << "\n";
  if (failed == want) return 0;
  for (int n : failed) {
    if (!want.count(n)) std::cout << fmt::format("unexpected failure: criterion {}\n", n);
  }
  for (int n : want) {
    if (!failed.count(n)) std::cout << fmt::format("criterion {} now passes; update the expected failures\n", n);
  }
  return 1;
}
