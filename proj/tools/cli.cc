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

#include "cli.h"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <set>

#include "lsqpe/estimator.h"
#include "lsqpe/io.h"
#include "lsqpe/mover.h"
#include "lsqpe/qasm.h"
#include "lsqpe/qpe.h"
#include "lsqpe/render.h"
#include "lsqpe/sim.h"
#include "lsqpe/surgery.h"
#include "lsqpe/synthesis.h"

#ifndef LSQPE_DEFAULT_DATA_DIR
#define LSQPE_DEFAULT_DATA_DIR "data"
#endif

namespace lsqpe::cli {
namespace {

std::string data_path(const std::string& name) { return std::string(LSQPE_DEFAULT_DATA_DIR) + "/" + name; }

std::string default_catalog() {
  if (const char* env = std::getenv("LSQPE_CATALOG"); env && *env) return env;
  return data_path("factories.json");
}

std::string sig12(double v) { return fmt::format("{:.12g}", v); }

// Options shared by the circuit-producing subcommands.
struct CircuitOptions {
  std::string hamiltonian;
  std::string mode = "iterative";
  std::string convention = "pi-over-sum";
  int phase_bits = 3;
  int trotter_steps = 1;
  int bits = 10;
  std::string imports;

  void add(CLI::App* app, bool with_synthesis) {
    app->add_option("--hamiltonian", hamiltonian, "Hamiltonian JSON (default: bundled H2)");
    app->add_option("--mode", mode, "QPE variant")->check(CLI::IsMember({"iterative", "textbook"}));
    app->add_option("--convention", convention, "Time scaling")
        ->check(CLI::IsMember({"pi-over-sum", "inverse-two-sum"}));
    app->add_option("--phase-bits", phase_bits, "Phase bits read out")->check(CLI::Range(1, 20));
    app->add_option("--trotter-steps", trotter_steps, "Trotter steps")->check(CLI::PositiveNumber);
    if (with_synthesis) {
      app->add_option("--bits", bits, "Synthesis precision, epsilon = 2^-bits")->check(CLI::Range(1, 30));
      app->add_option("--imports", imports, "Imported RZ sequences");
    }
  }

  Hamiltonian load_hamiltonian() const {
    return hamiltonian.empty() ? h2_hamiltonian() : hamiltonian_from_json(read_text(hamiltonian));
  }

  QpeSpec spec() const {
    QpeSpec s;
    s.mode = mode == "textbook" ? QpeMode::Textbook : QpeMode::Iterative;
    s.convention = convention == "inverse-two-sum" ? TimeConvention::InverseTwoSum : TimeConvention::PiOverSum;
    s.bits = phase_bits;
    s.trotter_steps = trotter_steps;
    return s;
  }

  LogicalCircuit ideal() const { return build_qpe(load_hamiltonian(), spec()); }

  LogicalCircuit lowered(const LogicalCircuit& ideal) const {
    if (imports.empty()) return lower_circuit(ideal, bits);
    Synthesizer synth;
    synth.load_import_file(imports);
    return lower_circuit(ideal, bits, synth);
  }
};

struct EstimateInputs {
  std::string counts;
  std::string circuit;
  std::string catalog;
  std::string budget_file;
  std::optional<double> budget_total;
  std::optional<double> logical_share;
  int max_distance = 51;
  double seconds_per_round = 1e-6;

  void add(CLI::App* app) {
    app->add_option("--counts", counts, "Operation counts JSON (default: bundled H2 counts)");
    app->add_option("-i,--input", circuit, "Take counts from a QASM circuit instead");
    app->add_option("--catalog", catalog, "Factory catalog JSON (default: $LSQPE_CATALOG or bundled)");
    app->add_option("--budget", budget_file, "Budget JSON");
    app->add_option("--budget-total", budget_total, "Total failure budget");
    app->add_option("--logical-share", logical_share, "Fraction of the budget for logical errors");
    app->add_option("--max-distance", max_distance, "Largest distance tried")->check(CLI::Range(3, 199));
    app->add_option("--seconds-per-round", seconds_per_round, "Wall-clock time per QEC round");
  }

  FactoryCatalog load_catalog() const { return FactoryCatalog::load(catalog.empty() ? default_catalog() : catalog); }

  EstimateOptions options() const {
    EstimateOptions o;
    if (!budget_file.empty()) o.budget = Budget::from_json(read_text(budget_file));
    if (budget_total) o.budget.total = *budget_total;
    if (logical_share) o.budget.logical_share = *logical_share;
    o.budget.validate();
    o.max_distance = max_distance;
    o.seconds_per_round = seconds_per_round;
    return o;
  }

  OperationCounts load(Method m) const {
    if (!circuit.empty()) {
      if (!counts.empty()) throw std::invalid_argument("--counts and --input are mutually exclusive");
      return counts_of(parse_qasm(read_text(circuit)), m);
    }
    return load_counts(read_text(counts.empty() ? data_path("h2_counts.json") : counts), m);
  }

  static OperationCounts counts_of(const LogicalCircuit& c, Method m) {
    if (m == Method::Direct) return direct_counts(c);
    auto p = compile(c);
    OperationCounts n;
    n.rotations = static_cast<std::int64_t>(p.rotation_count());
    n.measurements = static_cast<std::int64_t>(p.measurement_count());
    return n;
  }
};

std::vector<Method> methods_of(const std::string& name) {
  if (name == "both") return {Method::Direct, Method::Moved};
  return {parse_method(name)};
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text(path, text);
  }
}

std::string one_line(std::string s) {
  for (char& ch : s) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return s;
}

int cmd_build(const CircuitOptions& co, const std::string& output, std::ostream& out) {
  emit(output, emit_qasm(phases_to_rz(co.ideal())), out);
  return kOk;
}

int cmd_synth(const CircuitOptions& co, std::optional<double> angle, const std::string& input,
              const std::string& output, std::ostream& out) {
  if (angle) {
    Synthesizer local;
    Synthesizer& synth = co.imports.empty() ? default_synthesizer() : local;
    if (!co.imports.empty()) local.load_import_file(co.imports);
    auto seq = synth.synthesize_rz(*angle, co.bits);
    std::string gates;
    for (auto g : seq.gates) gates += (gates.empty() ? "" : " ") + gate_name(g);
    out << "gates " << (gates.empty() ? "I" : gates) << "\n"
        << "t_count " << seq.t_count << "\n"
        << "epsilon " << sig12(seq.epsilon) << "\n";
    return kOk;
  }
  LogicalCircuit source = input.empty() ? co.ideal() : parse_qasm(read_text(input));
  LogicalCircuit low = co.lowered(source);
  std::string text = emit_qasm(low);
  auto n = low.counts();
  std::string report = fmt::format("x {}\nz {}\nh {}\ns {}\nt {}\ncnot {}\nmeasure {}\ntotal {}\n", n.x, n.z, n.h,
                                   n.s, n.t, n.cnot, n.measure, n.total());
  if (output.empty() || output == "-") {
    out << text;
  } else {
    write_text(output, text);
    out << report;
  }
  return kOk;
}

int cmd_simulate(const CircuitOptions& co, const std::string& input, std::ostream& out) {
  LogicalCircuit ideal = co.ideal();
  LogicalCircuit low = input.empty() ? co.lowered(ideal) : parse_qasm(read_text(input));
  if (low.num_bits != ideal.num_bits) {
    throw std::invalid_argument(
        fmt::format("circuit has {} classical bits, the reference has {}", low.num_bits, ideal.num_bits));
  }
  auto a = exact_distribution(ideal);
  auto b = exact_distribution(low);
  std::set<std::string> keys;
  for (const auto& [k, v] : a.probs) keys.insert(k);
  for (const auto& [k, v] : b.probs) keys.insert(k);
  out << "outcome ideal lowered\n";
  for (const auto& k : keys) out << k << " " << sig12(a.at(k)) << " " << sig12(b.at(k)) << "\n";
  if (input.empty()) out << "bits " << co.bits << "\n";
  out << "tvd " << sig12(tvd(a, b)) << "\n";
  return kOk;
}

int cmd_move(const CircuitOptions& co, const std::string& input, const std::string& output, std::ostream& out) {
  LogicalCircuit low = input.empty() ? co.lowered(co.ideal()) : parse_qasm(read_text(input));
  auto p = compile(low);
  emit(output, p.to_json(), out);
  if (!output.empty() && output != "-") {
    out << fmt::format("rotations {}\nmeasurements {}\nframe_events {}\n", p.rotation_count(),
                       p.measurement_count(), p.frame_event_count());
  }
  return kOk;
}

SurgerySchedule schedule_input(Method m, int d, const std::string& circuit, const std::string& program,
                               const std::string& counts) {
  auto layout = LayoutSpec::make(m, d);
  int given = !circuit.empty() + !program.empty() + !counts.empty();
  if (given > 1) throw std::invalid_argument("give at most one of --input, --program and --counts");
  if (!program.empty()) return schedule(PauliRotationProgram::from_json(read_text(program)), layout);
  if (!circuit.empty()) {
    auto c = parse_qasm(read_text(circuit));
    return m == Method::Direct ? schedule(c, layout) : schedule(compile(c), layout);
  }
  return schedule(load_counts(read_text(counts.empty() ? data_path("h2_counts.json") : counts), m), layout);
}

int cmd_schedule(const std::string& method, int d, const std::string& circuit, const std::string& program,
                 const std::string& counts, const std::string& output, std::ostream& out) {
  auto s = schedule_input(parse_method(method), d, circuit, program, counts);
  emit(output, s.to_json(), out);
  if (!output.empty() && output != "-") {
    out << fmt::format("total_rounds {}\nexpected_rounds {}\npeak_patches {}\n", s.total_rounds,
                       sig12(s.rounds(CostMode::Expected)), s.peak_patches);
  }
  return kOk;
}

int cmd_estimate(const std::string& method, const std::vector<double>& ps, const EstimateInputs& in, bool json,
                 std::ostream& out) {
  auto catalog = in.load_catalog();
  auto opts = in.options();
  std::vector<EstimateReport> reports;
  for (Method m : methods_of(method)) {
    auto counts = in.load(m);
    for (double p : ps) reports.push_back(solve_distance(m, p, counts, catalog, opts));
  }
  if (json) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(nlohmann::ordered_json::parse(r.to_json()));
    out << arr.dump(2) << "\n";
  } else {
    out << format_table(reports);
  }
  return kOk;
}

std::string sweep_text(const std::string& method, const std::vector<double>& ps, const EstimateInputs& in,
                       std::ostream& err, int& status) {
  auto catalog = in.load_catalog();
  auto opts = in.options();
  std::string csv;
  for (Method m : methods_of(method)) {
    auto points = sweep(m, ps, in.load(m), catalog, opts);
    std::string part = sweep_csv(m, points);
    if (!csv.empty()) part = part.substr(part.find('\n') + 1);
    csv += part;
    for (const auto& pt : points) {
      if (pt.report) continue;
      err << "lsqpe sweep: " << method_name(m) << " p=" << sig12(pt.p) << ": " << one_line(pt.error) << "\n";
      status = std::max(status, pt.infeasible ? int(kInfeasible) : int(kUserError));
    }
  }
  return csv;
}

struct RenderOptions {
  std::string method = "direct";
  int d = 3;
  int factories = 0;
  std::string rotation, measurement, program, circuit;
  std::optional<std::size_t> step;
};

int cmd_render(const RenderOptions& ro, const std::string& output, std::ostream& out) {
  Method m = parse_method(ro.method);
  auto layout = LayoutSpec::make(m, ro.d, ro.factories);
  int given = !ro.rotation.empty() + !ro.measurement.empty() + !ro.program.empty() + !ro.circuit.empty();
  if (given > 1) throw std::invalid_argument("give at most one of --rotation, --measurement, --program, --input");
  std::string svg;
  if (!ro.rotation.empty() || !ro.measurement.empty()) {
    if (m != Method::Moved) throw std::invalid_argument("--rotation and --measurement need --method moved");
    PauliRotationProgram p;
    ProgramEvent e;
    if (!ro.rotation.empty()) {
      e.kind = EventKind::Rotation;
      e.rotation = PauliRotation::make(PhasedPauli::parse(ro.rotation), Angle::eighths(1));
      p.num_qubits = static_cast<std::uint32_t>(e.rotation.basis.size());
    } else {
      e.kind = EventKind::Measurement;
      e.basis = PhasedPauli::parse(ro.measurement);
      p.num_qubits = static_cast<std::uint32_t>(e.basis.size());
      p.num_bits = 1;
      p.inverted_bits = {false};
    }
    p.events.push_back(e);
    svg = render_layout(schedule(p, layout), std::size_t{0});
  } else if (!ro.program.empty()) {
    if (m != Method::Moved) throw std::invalid_argument("--program needs --method moved");
    svg = render_layout(schedule(PauliRotationProgram::from_json(read_text(ro.program)), layout), ro.step);
  } else if (!ro.circuit.empty()) {
    auto c = parse_qasm(read_text(ro.circuit));
    auto s = m == Method::Direct ? schedule(c, layout) : schedule(compile(c), layout);
    svg = render_layout(s, ro.step);
  } else {
    if (ro.step) throw std::invalid_argument("--step needs --program or --input");
    svg = render_layout(layout);
  }
  emit(output, svg, out);
  return kOk;
}

struct PipelineOptions {
  std::string out_dir;
  std::vector<double> ps = {1e-3};
  std::vector<double> sweep_ps = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3};
};

int cmd_pipeline(const CircuitOptions& co, const EstimateInputs& in, const PipelineOptions& po, std::ostream& out,
                 std::ostream& err) {
  if (po.ps.empty()) throw std::invalid_argument("-p needs at least one error rate");
  std::filesystem::create_directories(po.out_dir);
  auto path = [&](const std::string& name) { return (std::filesystem::path(po.out_dir) / name).string(); };
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const std::string& text) {
    write_text(path(name), text);
    written.push_back(path(name));
  };

  LogicalCircuit low = co.lowered(co.ideal());
  put("lowered.qasm", emit_qasm(low));
  auto program = compile(low);
  put("program.json", program.to_json());

  // The bundled counts reproduce the reference table; without --counts the
  // estimate uses the counts of the circuit just built.
  EstimateInputs inputs = in;
  std::string lowered_path = path("lowered.qasm");
  if (inputs.counts.empty() && inputs.circuit.empty()) inputs.circuit = lowered_path;
  auto catalog = inputs.load_catalog();
  auto opts = inputs.options();

  std::vector<EstimateReport> reports;
  for (Method m : {Method::Direct, Method::Moved}) {
    auto counts = inputs.load(m);
    for (double p : po.ps) reports.push_back(solve_distance(m, p, counts, catalog, opts));
    const auto& r = reports.back();
    std::string name = method_name(m);
    auto layout = LayoutSpec::make(m, r.distance);
    auto s = m == Method::Direct ? schedule(low, layout) : schedule(program, layout);
    put("schedule_" + name + ".json", s.to_json());
    auto drawn = LayoutSpec::make(m, r.distance, r.factory_count);
    if (m == Method::Moved && !s.steps.empty()) {
      SurgerySchedule shown = s;
      shown.layout = drawn;
      put("layout_" + name + ".svg", render_layout(shown, std::size_t{0}));
    } else {
      put("layout_" + name + ".svg", render_layout(drawn));
    }
  }
  put("estimate.txt", format_table(reports));

  int status = kOk;
  put("sweep.csv", sweep_text("both", po.sweep_ps, inputs, err, status));
  for (const auto& f : written) out << "wrote " << f << "\n";
  return status;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lattice-surgery compilation and resource estimation for phase estimation circuits", "lsqpe"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", "lsqpe 1.0.0");
  std::optional<long> seed;
  app.add_option("--seed", seed, "Accepted for compatibility; every stage is deterministic");

  std::string output;
  std::string input;

  CircuitOptions build_opts;
  auto* build = app.add_subcommand("build", "Emit the QPE circuit as QASM (free angles as rz)");
  build_opts.add(build, false);
  build->add_option("-o,--output", output, "Output file (default: stdout)");

  CircuitOptions synth_opts;
  std::optional<double> angle;
  auto* synth = app.add_subcommand("synth", "Synthesize one RZ angle or lower a whole circuit to Clifford+T");
  synth_opts.add(synth, true);
  synth->add_option("--angle", angle, "Single RZ angle in radians");
  synth->add_option("-i,--input", input, "QASM circuit to lower (default: the QPE circuit)");
  synth->add_option("-o,--output", output, "Lowered QASM (default: stdout)");

  CircuitOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Exact output distributions and TVD against the ideal circuit");
  sim_opts.add(simulate, true);
  simulate->add_option("-i,--input", input, "Lowered QASM to compare (default: lower at --bits)");

  CircuitOptions move_opts;
  auto* move = app.add_subcommand("move", "Move Cliffords to the end and emit the rotation program");
  move_opts.add(move, true);
  move->add_option("-i,--input", input, "Clifford+T QASM (default: lowered QPE circuit)");
  move->add_option("-o,--output", output, "Program JSON (default: stdout)");

  std::string sched_method = "direct", sched_program, sched_counts;
  int sched_d = 3;
  auto* sched = app.add_subcommand("schedule", "Lattice-surgery schedule as a JSON timeline");
  sched->add_option("--method", sched_method, "direct or moved")->check(CLI::IsMember({"direct", "moved"}));
  sched->add_option("-d,--distance", sched_d, "Code distance")->check(CLI::Range(3, 199));
  sched->add_option("-i,--input", input, "Clifford+T QASM circuit");
  sched->add_option("--program", sched_program, "Moved program JSON");
  sched->add_option("--counts", sched_counts, "Operation counts JSON (default: bundled H2 counts)");
  sched->add_option("-o,--output", output, "Schedule JSON (default: stdout)");

  std::string est_method = "both";
  std::vector<double> est_ps = {1e-3};
  bool est_json = false;
  EstimateInputs est_in;
  auto* estimate = app.add_subcommand("estimate", "Smallest distance and resources meeting the budget");
  estimate->add_option("--method", est_method, "direct, moved or both")
      ->check(CLI::IsMember({"direct", "moved", "both"}));
  estimate->add_option("-p,--error-rate", est_ps, "Physical error rates")->delimiter(',');
  estimate->add_flag("--json", est_json, "JSON instead of a table");
  est_in.add(estimate);

  std::string sweep_method = "both";
  std::vector<double> sweep_ps = {1e-4, 2e-4, 5e-4, 1e-3, 2e-3};
  EstimateInputs sweep_in;
  auto* sweep_cmd = app.add_subcommand("sweep", "Estimate over a list of error rates as CSV");
  sweep_cmd->add_option("--method", sweep_method, "direct, moved or both")
      ->check(CLI::IsMember({"direct", "moved", "both"}));
  sweep_cmd->add_option("-p,--error-rates", sweep_ps, "Comma-separated error rates")->delimiter(',');
  sweep_cmd->add_option("-o,--output", output, "CSV file (default: stdout)");
  sweep_in.add(sweep_cmd);

  RenderOptions ro;
  auto* render = app.add_subcommand("render", "SVG of a patch layout, optionally during one step");
  render->add_option("--method", ro.method, "direct or moved")->check(CLI::IsMember({"direct", "moved"}));
  render->add_option("-d,--distance", ro.d, "Code distance")->check(CLI::Range(3, 199));
  render->add_option("--factories", ro.factories, "Factories drawn around the layout")->check(CLI::Range(0, 4));
  render->add_option("--rotation", ro.rotation, "pi/4 rotation basis over the data qubits, e.g. YX");
  render->add_option("--measurement", ro.measurement, "Pauli measurement basis over the data qubits");
  render->add_option("--program", ro.program, "Moved program JSON");
  render->add_option("-i,--input", ro.circuit, "Clifford+T QASM circuit");
  render->add_option("--step", ro.step, "Step of the schedule to draw");
  render->add_option("-o,--output", output, "SVG file (default: stdout)");

  CircuitOptions pipe_opts;
  EstimateInputs pipe_in;
  PipelineOptions po;
  auto* pipeline = app.add_subcommand("pipeline", "Run every stage and write all artifacts to a directory");
  pipe_opts.add(pipeline, true);
  pipe_in.add(pipeline);
  pipeline->add_option("--out", po.out_dir, "Output directory")->required();
  pipeline->add_option("-p,--error-rate", po.ps, "Physical error rates for the estimate")->delimiter(',');
  pipeline->add_option("--sweep", po.sweep_ps, "Error rates for the sweep")->delimiter(',');

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("lsqpe");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "lsqpe: error: " << one_line(e.what()) << "\n";
    return kUserError;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    if (build->parsed()) return cmd_build(build_opts, output, out);
    if (synth->parsed()) return cmd_synth(synth_opts, angle, input, output, out);
    if (simulate->parsed()) return cmd_simulate(sim_opts, input, out);
    if (move->parsed()) return cmd_move(move_opts, input, output, out);
    if (sched->parsed()) return cmd_schedule(sched_method, sched_d, input, sched_program, sched_counts, output, out);
    if (estimate->parsed()) return cmd_estimate(est_method, est_ps, est_in, est_json, out);
    if (sweep_cmd->parsed()) {
      int status = kOk;
      emit(output, sweep_text(sweep_method, sweep_ps, sweep_in, err, status), out);
      return status;
    }
    if (render->parsed()) return cmd_render(ro, output, out);
    if (pipeline->parsed()) return cmd_pipeline(pipe_opts, pipe_in, po, out, err);
  } catch (const Infeasible& e) {
    err << "lsqpe " << name << ": infeasible: " << one_line(e.what()) << "\n";
    return kInfeasible;
  } catch (const std::exception& e) {
    err << "lsqpe " << name << ": error: " << one_line(e.what()) << "\n";
    return kUserError;
  }
  return kUserError;
}

}  // namespace lsqpe::cli
