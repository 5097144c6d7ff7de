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
#include <stdexcept>
#include <string>
#include <vector>

#include "lsqpe/surgery.h"

namespace lsqpe {

/// No distance or factory configuration meets the budget.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Per-patch, per-round logical error rate 0.1 (100 p)^((d+1)/2).
double logical_error_rate(double p, int d);

/// (n_data + n_route + n_storage) * n_meas * logical_error_rate(p, d).
double circuit_failure(double p, int d, std::int64_t n_data, std::int64_t n_route, std::int64_t n_storage,
                       std::int64_t n_meas);

/// 35 p^3.
double distill_15_to_1(double p);
/// Two concatenated 15-to-1 levels: 35 (35 p^3)^3.
double distill_concatenated(double p);

struct FactorySpec {
  std::string name;
  double physical_error_rate = 0;
  std::int64_t qubits = 0;
  double rounds = 0;        // expected rounds per output state
  double output_error = 0;  // per output state
  bool interpolated = false;
  bool extrapolated = false;

  /// Throws std::invalid_argument unless every field is positive and the
  /// output error is below the input rate.
  void validate() const;
};

class FactoryCatalog {
 public:
  FactoryCatalog() = default;
  explicit FactoryCatalog(std::vector<FactorySpec> entries);

  /// {"factories": [{"name", "physical_error_rate", "qubits", "rounds",
  /// "output_error"}]}. Throws std::invalid_argument on malformed input.
  static FactoryCatalog from_json(const std::string& text);
  /// Throws std::runtime_error naming the path if it cannot be read.
  static FactoryCatalog load(const std::string& path);

  /// Exact entry for p when present (relative match 1e-9). Otherwise the
  /// qubits, rounds and output error are interpolated linearly in log-log
  /// space between the neighbouring entries, or extrapolated from the two
  /// nearest when p is outside the catalogue range; the result is flagged.
  /// Throws std::invalid_argument on an empty catalogue.
  FactorySpec for_rate(double p) const;

  const std::vector<FactorySpec>& entries() const { return entries_; }

 private:
  std::vector<FactorySpec> entries_;  // sorted by physical error rate
};

struct Budget {
  double total = 0.01;
  double logical_share = 0.5;  // fraction available to logical errors

  double logical() const { return total * logical_share; }
  double tstate() const { return total * (1 - logical_share); }
  /// Throws std::invalid_argument unless total and share lie in (0, 1).
  void validate() const;
  static Budget from_json(const std::string& text);  // {"total", "logical_share"}
};

struct FactorySelection {
  int count = 0;
  int storage_patches = 0;  // one 2d^2 patch per factory
};

/// Smallest count with f.rounds / count <= interval. Throws Infeasible when
/// the per-state error exceeds t_budget / t_count or more than four
/// factories are needed.
FactorySelection select_factories(const FactorySpec& f, int interval, std::int64_t t_count, double t_budget);

struct EstimateOptions {
  Budget budget;
  int max_distance = 51;
  double seconds_per_round = 1e-6;
};

struct EstimateReport {
  Method method = Method::Direct;
  double p = 0;
  int distance = 0;
  std::int64_t circuit_qubits = 0;
  double logical_error = 0;
  int interval = 0;
  int factory_count = 0;
  std::int64_t factory_qubits = 0;
  std::int64_t storage_qubits = 0;
  double tstate_error = 0;
  std::int64_t total_qubits = 0;
  std::int64_t total_rounds = 0;
  double total_error = 0;
  double seconds = 0;
  FactorySpec factory;

  std::string to_json() const;
};

/// T states the method consumes: T-like gates (direct) or pi/4 rotations.
std::int64_t t_count(Method method, const OperationCounts& counts);

/// Outcome of evaluating one candidate distance.
struct DistanceCheck {
  bool feasible = false;
  std::string reason;  // why not, when infeasible
  EstimateReport report;
};

/// Evaluates distance d: rounds and factory count at d, then the logical
/// failure including the storage patches against the logical budget.
DistanceCheck check_distance(Method method, double p, int d, const OperationCounts& counts,
                             const FactorySpec& factory, const EstimateOptions& opts = {});

/// Smallest feasible d >= 3. Throws Infeasible if the factory is too noisy or
/// no d up to opts.max_distance works; std::invalid_argument for p outside
/// (0, 1e-2).
EstimateReport solve_distance(Method method, double p, const OperationCounts& counts,
                              const FactoryCatalog& catalog, const EstimateOptions& opts = {});

struct SweepPoint {
  double p = 0;
  std::optional<EstimateReport> report;
  std::string error;
  bool infeasible = false;  // the failure was Infeasible, not bad input
};

/// One solve per p, run concurrently; per-point failures are collected.
std::vector<SweepPoint> sweep(Method method, const std::vector<double>& ps, const OperationCounts& counts,
                              const FactoryCatalog& catalog, const EstimateOptions& opts = {});

/// Aligned text table with one column per report, rows as in the detailed
/// resource table.
std::string format_table(const std::vector<EstimateReport>& reports);
/// "method,p,distance,qubits,rounds,time_s,total_error" plus one row per
/// solved point; failed points leave the numeric fields empty.
std::string sweep_csv(Method method, const std::vector<SweepPoint>& points);

/// Counts file: {"direct": {"x", "z", "h", "s", "cnot", "tlike", "measure"},
/// "moved": {"rotations", "measurements"}}.
OperationCounts load_counts(const std::string& text, Method method);

}  // namespace lsqpe
