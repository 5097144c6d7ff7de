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

#include "lsqpe/estimator.h"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <json.hpp>
#include <sstream>

namespace lsqpe {

namespace {

using nlohmann::json;

std::string g12(double v) { return fmt::format("{:.12g}", v); }

void check_rate(double p) {
  if (!(p > 0 && p < 1e-2))
    throw std::invalid_argument(fmt::format("physical error rate {} is outside (0, 1e-2)", g12(p)));
}

}  // namespace

double logical_error_rate(double p, int d) { return 0.1 * std::pow(100 * p, (d + 1) / 2.0); }

double circuit_failure(double p, int d, std::int64_t n_data, std::int64_t n_route, std::int64_t n_storage,
                       std::int64_t n_meas) {
  return static_cast<double>(n_data + n_route + n_storage) * static_cast<double>(n_meas) *
         logical_error_rate(p, d);
}

double distill_15_to_1(double p) { return 35 * p * p * p; }
double distill_concatenated(double p) { return distill_15_to_1(distill_15_to_1(p)); }

void FactorySpec::validate() const {
  if (!(physical_error_rate > 0 && qubits > 0 && rounds > 0 && output_error > 0))
    throw std::invalid_argument("factory '" + name + "' has a non-positive field");
  if (!(output_error < physical_error_rate))
    throw std::invalid_argument("factory '" + name + "' does not reduce the error rate");
}

FactoryCatalog::FactoryCatalog(std::vector<FactorySpec> entries) : entries_(std::move(entries)) {
  for (const auto& f : entries_) f.validate();
  std::sort(entries_.begin(), entries_.end(),
            [](const FactorySpec& a, const FactorySpec& b) { return a.physical_error_rate < b.physical_error_rate; });
}

FactoryCatalog FactoryCatalog::from_json(const std::string& text) {
  std::vector<FactorySpec> out;
  try {
    const json j = json::parse(text);
    for (const auto& e : j.at("factories")) {
      FactorySpec f;
      f.name = e.value("name", std::string("factory"));
      f.physical_error_rate = e.at("physical_error_rate").get<double>();
      f.qubits = e.at("qubits").get<std::int64_t>();
      f.rounds = e.at("rounds").get<double>();
      f.output_error = e.at("output_error").get<double>();
      out.push_back(f);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed factory catalog: ") + e.what());
  }
  return FactoryCatalog(std::move(out));
}

FactoryCatalog FactoryCatalog::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read factory catalog '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

FactorySpec FactoryCatalog::for_rate(double p) const {
  if (entries_.empty()) throw std::invalid_argument("factory catalog is empty");
  for (const auto& f : entries_)
    if (std::abs(f.physical_error_rate - p) <= 1e-9 * p) return f;
  FactorySpec out;
  if (entries_.size() == 1) {
    out = entries_[0];
    out.extrapolated = true;
  } else {
    // Neighbouring pair, or the two nearest at either end.
    std::size_t hi = 1;
    while (hi + 1 < entries_.size() && entries_[hi].physical_error_rate < p) ++hi;
    const FactorySpec& a = entries_[hi - 1];
    const FactorySpec& b = entries_[hi];
    const double t = std::log(p / a.physical_error_rate) / std::log(b.physical_error_rate / a.physical_error_rate);
    auto lerp = [t](double x, double y) { return std::exp(std::log(x) + t * (std::log(y) - std::log(x))); };
    out.name = fmt::format("{} / {}", a.name, b.name);
    out.qubits = std::llround(lerp(static_cast<double>(a.qubits), static_cast<double>(b.qubits)));
    out.rounds = lerp(a.rounds, b.rounds);
    out.output_error = lerp(a.output_error, b.output_error);
    out.interpolated = t > 0 && t < 1;
    out.extrapolated = !out.interpolated;
  }
  out.physical_error_rate = p;
  return out;
}

void Budget::validate() const {
  if (!(total > 0 && total < 1)) throw std::invalid_argument("budget total must lie in (0, 1)");
  if (!(logical_share > 0 && logical_share < 1))
    throw std::invalid_argument("budget logical share must lie in (0, 1)");
}

Budget Budget::from_json(const std::string& text) {
  Budget b;
  try {
    const json j = json::parse(text);
    b.total = j.value("total", b.total);
    b.logical_share = j.value("logical_share", b.logical_share);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed budget: ") + e.what());
  }
  b.validate();
  return b;
}

FactorySelection select_factories(const FactorySpec& f, int interval, std::int64_t t_count, double t_budget) {
  if (t_count <= 0) return {};
  const double per_state = t_budget / static_cast<double>(t_count);
  if (f.output_error > per_state)
    throw Infeasible(fmt::format("factory error {} exceeds the per-T budget {} ({} T states)", g12(f.output_error),
                                 g12(per_state), t_count));
  for (int k = 1; k <= 4; ++k)
    if (f.rounds / k <= interval) return {k, k};
  throw Infeasible(fmt::format("{} rounds per state need more than four factories to keep up with one T every {} rounds",
                               g12(f.rounds), interval));
}

std::int64_t t_count(Method method, const OperationCounts& counts) {
  return method == Method::Direct ? counts.tlike : counts.rotations;
}

DistanceCheck check_distance(Method method, double p, int d, const OperationCounts& counts,
                             const FactorySpec& factory, const EstimateOptions& opts) {
  DistanceCheck out;
  const LayoutSpec layout = LayoutSpec::make(method, d);
  EstimateReport& r = out.report;
  r.method = method;
  r.p = p;
  r.distance = d;
  r.factory = factory;
  r.circuit_qubits = physical_qubits(layout);
  r.interval = consumption_interval(layout);
  r.total_rounds = total_rounds(counts, layout);
  r.seconds = static_cast<double>(r.total_rounds) * opts.seconds_per_round;
  const std::int64_t tc = t_count(method, counts);
  FactorySelection sel;
  try {
    sel = select_factories(factory, r.interval, tc, opts.budget.tstate());
  } catch (const Infeasible& e) {
    out.reason = e.what();
    return out;
  }
  r.factory_count = sel.count;
  r.factory_qubits = sel.count * factory.qubits;
  r.storage_qubits = static_cast<std::int64_t>(sel.storage_patches) * 2 * d * d;
  r.total_qubits = r.circuit_qubits + r.factory_qubits + r.storage_qubits;
  const int patches = layout.budget_patches();
  r.logical_error = circuit_failure(p, d, layout.data_capacity(), patches - layout.data_capacity(),
                                    sel.storage_patches, r.total_rounds);
  r.tstate_error = static_cast<double>(tc) * factory.output_error;
  r.total_error = r.logical_error + r.tstate_error;
  out.feasible = r.logical_error <= opts.budget.logical();
  if (!out.feasible)
    out.reason = fmt::format("logical failure {} exceeds {} at d={}", g12(r.logical_error),
                             g12(opts.budget.logical()), d);
  return out;
}

EstimateReport solve_distance(Method method, double p, const OperationCounts& counts, const FactoryCatalog& catalog,
                              const EstimateOptions& opts) {
  check_rate(p);
  opts.budget.validate();
  const FactorySpec factory = catalog.for_rate(p);
  const std::int64_t tc = t_count(method, counts);
  if (tc > 0 && factory.output_error > opts.budget.tstate() / static_cast<double>(tc))
    throw Infeasible(fmt::format("factory error {} times {} T states exceeds the T-state budget {}",
                                 g12(factory.output_error), tc, g12(opts.budget.tstate())));
  std::string last;
  for (int d = 3; d <= opts.max_distance; ++d) {
    DistanceCheck c = check_distance(method, p, d, counts, factory, opts);
    if (c.feasible) return c.report;
    last = c.reason;
  }
  throw Infeasible(fmt::format("no code distance up to {} meets the budget at p={} ({})", opts.max_distance, g12(p),
                               last));
}

std::vector<SweepPoint> sweep(Method method, const std::vector<double>& ps, const OperationCounts& counts,
                              const FactoryCatalog& catalog, const EstimateOptions& opts) {
  std::vector<std::future<SweepPoint>> jobs;
  for (double p : ps) {
    jobs.push_back(std::async(std::launch::async, [=, &counts, &catalog, &opts] {
      SweepPoint pt;
      pt.p = p;
      try {
        pt.report = solve_distance(method, p, counts, catalog, opts);
      } catch (const Infeasible& e) {
        pt.error = e.what();
        pt.infeasible = true;
      } catch (const std::exception& e) {
        pt.error = e.what();
      }
      return pt;
    }));
  }
  std::vector<SweepPoint> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

std::string EstimateReport::to_json() const {
  nlohmann::ordered_json j;
  auto num = [](double v) { return std::stod(g12(v)); };
  j["method"] = method_name(method);
  j["physical_error_rate"] = num(p);
  j["distance"] = distance;
  j["circuit_qubits"] = circuit_qubits;
  j["logical_error"] = num(logical_error);
  j["consumption_interval"] = interval;
  j["factory_count"] = factory_count;
  j["factory_qubits"] = factory_qubits;
  j["storage_qubits"] = storage_qubits;
  j["tstate_error"] = num(tstate_error);
  j["total_qubits"] = total_qubits;
  j["total_rounds"] = total_rounds;
  j["total_error"] = num(total_error);
  j["seconds"] = num(seconds);
  j["factory"] = {{"name", factory.name},
                  {"qubits", factory.qubits},
                  {"rounds", num(factory.rounds)},
                  {"output_error", num(factory.output_error)},
                  {"interpolated", factory.interpolated},
                  {"extrapolated", factory.extrapolated}};
  return j.dump(2) + "\n";
}

std::string format_table(const std::vector<EstimateReport>& reports) {
  std::vector<std::pair<std::string, std::vector<std::string>>> rows = {
      {"Implementation method", {}},
      {"Physical error rate", {}},
      {"Code distance", {}},
      {"Qubits for logical circuit", {}},
      {"Logical error probability", {}},
      {"Rounds between non-Clifford gates", {}},
      {"T state factories", {}},
      {"Qubits for generating T states", {}},
      {"Qubits for storing T states", {}},
      {"T state error probability", {}},
      {"Total physical qubits", {}},
      {"QEC rounds", {}},
      {"Total error probability", {}},
  };
  auto sci = [](double v) { return fmt::format("{:.3e}", v); };
  for (const auto& r : reports) {
    const std::string cells[] = {method_name(r.method),
                                 fmt::format("{:g}", r.p),
                                 std::to_string(r.distance),
                                 std::to_string(r.circuit_qubits),
                                 sci(r.logical_error),
                                 std::to_string(r.interval),
                                 std::to_string(r.factory_count),
                                 std::to_string(r.factory_qubits),
                                 std::to_string(r.storage_qubits),
                                 sci(r.tstate_error),
                                 std::to_string(r.total_qubits),
                                 std::to_string(r.total_rounds),
                                 sci(r.total_error)};
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].second.push_back(cells[i]);
  }
  std::size_t label_w = 0, cell_w = 0;
  for (const auto& [label, cells] : rows) {
    label_w = std::max(label_w, label.size());
    for (const auto& c : cells) cell_w = std::max(cell_w, c.size());
  }
  std::string out;
  for (const auto& [label, cells] : rows) {
    out += fmt::format("{:<{}}", label, label_w);
    for (const auto& c : cells) out += fmt::format("  {:>{}}", c, cell_w);
    out += "\n";
  }
  return out;
}

std::string sweep_csv(Method method, const std::vector<SweepPoint>& points) {
  std::string out = "method,p,distance,qubits,rounds,time_s,total_error\n";
  for (const auto& pt : points) {
    if (pt.report) {
      const auto& r = *pt.report;
      out += fmt::format("{},{},{},{},{},{},{}\n", method_name(method), g12(pt.p), r.distance, r.total_qubits,
                         r.total_rounds, g12(r.seconds), g12(r.total_error));
    } else {
      out += fmt::format("{},{},,,,,\n", method_name(method), g12(pt.p));
    }
  }
  return out;
}

OperationCounts load_counts(const std::string& text, Method method) {
  OperationCounts n;
  try {
    const json j = json::parse(text);
    const json& m = j.at(method_name(method));
    auto get = [&](const char* key) { return m.value(key, std::int64_t{0}); };
    if (method == Method::Direct) {
      n.x = get("x");
      n.z = get("z");
      n.h = get("h");
      n.s = get("s");
      n.cnot = get("cnot");
      n.tlike = get("tlike");
      n.measure = get("measure");
    } else {
      n.rotations = get("rotations");
      n.measurements = get("measurements");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("malformed counts file: ") + e.what());
  }
  return n;
}

}  // namespace lsqpe
