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

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lsqpe/qpe.h"
#include "lsqpe/ring.h"

namespace lsqpe {

namespace {

constexpr double kPi = std::numbers::pi;
using Quat = std::array<double, 4>;

int mod8(int k) { return ((k % 8) + 8) % 8; }

bool is_diagonal_gate(GateKind g) {
  return g == GateKind::Z || g == GateKind::S || g == GateKind::Sdg || g == GateKind::T ||
         g == GateKind::Tdg;
}

int diagonal_eighths(GateKind g) {
  switch (g) {
    case GateKind::Z: return 4;
    case GateKind::S: return 2;
    case GateKind::Sdg: return 6;
    case GateKind::T: return 1;
    case GateKind::Tdg: return 7;
    default: return 0;
  }
}

// SU(2) quaternion (w, x, y, z) of U / sqrt(det U), with
// V = w I - i (x X + y Y + z Z). Defined up to sign.
Quat quaternion(const Eigen::Matrix2cd& u) {
  std::complex<double> s = std::sqrt(u.determinant());
  Eigen::Matrix2cd v = u / s;
  return {(v(0, 0).real() + v(1, 1).real()) / 2, -(v(0, 1).imag() + v(1, 0).imag()) / 2,
          (v(1, 0).real() - v(0, 1).real()) / 2, (v(1, 1).imag() - v(0, 0).imag()) / 2};
}

// sqrt(1 - |<q, q'>|) computed from chord lengths, which keeps precision
// for small distances.
double quat_distance(const Quat& a, const Quat& b) {
  double minus = 0, plus = 0;
  for (int i = 0; i < 4; ++i) {
    minus += (a[i] - b[i]) * (a[i] - b[i]);
    plus += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return std::sqrt(std::min(minus, plus) / 2);
}

struct Clifford {
  std::vector<GateKind> word;  // time order
  Eigen::Matrix2cd matrix;
};

// The 24 single-qubit Cliffords modulo phase, by breadth-first search over
// {H, S}. Index 0 is the identity.
const std::vector<Clifford>& cliffords() {
  static const std::vector<Clifford> group = [] {
    std::vector<Clifford> out;
    std::vector<ExactMat2> mats;
    std::set<ExactMat2> seen;
    out.push_back({{}, Eigen::Matrix2cd::Identity()});
    mats.push_back(ExactMat2::identity());
    seen.insert(ExactMat2::identity().canonical_mod_phase());
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (GateKind g : {GateKind::H, GateKind::S}) {
        ExactMat2 m = ExactMat2::gate(g) * mats[i];
        if (!seen.insert(m.canonical_mod_phase()).second) continue;
        auto word = out[i].word;
        word.push_back(g);
        out.push_back({word, sequence_matrix(word)});
        mats.push_back(m);
      }
    }
    if (out.size() != 24) throw std::logic_error("Clifford enumeration is broken");
    return out;
  }();
  return group;
}

// A normal form (T | e) s_1 ... s_n C with s_j in {HT, SHT}; syllable j is
// SHT when bit j of `syllables` is set.
struct NormalForm {
  bool lead_t = false;
  int n = 0;
  std::uint32_t syllables = 0;
  int clifford = 0;

  int t_count() const { return lead_t + n; }

  std::uint32_t pack() const {
    return static_cast<std::uint32_t>(clifford) | (std::uint32_t{lead_t} << 5) |
           (static_cast<std::uint32_t>(n) << 6) | (syllables << 11);
  }
  static NormalForm unpack(std::uint32_t code) {
    return NormalForm{bool((code >> 5) & 1), int((code >> 6) & 31), code >> 11, int(code & 31)};
  }

  // Time order: C, then s_n ... s_1, then the leading T.
  void spell(std::vector<GateKind>& out) const {
    const auto& w = cliffords()[clifford].word;
    out.insert(out.end(), w.begin(), w.end());
    for (int j = n - 1; j >= 0; --j) {
      out.push_back(GateKind::T);
      out.push_back(GateKind::H);
      if ((syllables >> j) & 1) out.push_back(GateKind::S);
    }
    if (lead_t) out.push_back(GateKind::T);
  }
};

const Eigen::Matrix2cd& gate_matrix(GateKind g) {
  static const std::map<GateKind, Eigen::Matrix2cd> table = [] {
    std::map<GateKind, Eigen::Matrix2cd> t;
    for (GateKind k : {GateKind::X, GateKind::Z, GateKind::H, GateKind::S, GateKind::Sdg,
                       GateKind::T, GateKind::Tdg}) {
      auto e = ExactMat2::gate(k).to_complex();
      Eigen::Matrix2cd m;
      m << e[0], e[1], e[2], e[3];
      t[k] = m;
    }
    return t;
  }();
  return table.at(g);
}

Eigen::Matrix2cd syllable_matrix(bool sht) {
  Eigen::Matrix2cd m = gate_matrix(GateKind::H) * gate_matrix(GateKind::T);
  return sht ? Eigen::Matrix2cd(gate_matrix(GateKind::S) * m) : m;
}

// Static 4D kd-tree answering fixed-radius queries.
class KdTree {
 public:
  explicit KdTree(const std::vector<Quat>& pts) : pts_(pts), order_(pts.size()) {
    std::iota(order_.begin(), order_.end(), 0u);
    if (!pts_.empty()) build(0, order_.size(), 0);
  }

  void radius(const Quat& q, double r, std::vector<std::uint32_t>& hits) const {
    if (!nodes_.empty()) visit(0, q, r * r, hits);
  }

 private:
  struct Node {
    std::size_t begin, end;
    int axis;
    double split;
    int left = -1, right = -1;
  };
  static constexpr std::size_t kLeaf = 8;

  int build(std::size_t begin, std::size_t end, int depth) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({begin, end, depth % 4, 0.0});
    if (end - begin <= kLeaf) return id;
    int axis = depth % 4;
    std::size_t mid = (begin + end) / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) { return pts_[a][axis] < pts_[b][axis]; });
    nodes_[id].split = pts_[order_[mid]][axis];
    int l = build(begin, mid, depth + 1);
    int r = build(mid, end, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  void visit(int id, const Quat& q, double r2, std::vector<std::uint32_t>& hits) const {
    const Node& n = nodes_[id];
    if (n.left < 0) {
      for (std::size_t i = n.begin; i < n.end; ++i) {
        const Quat& p = pts_[order_[i]];
        double d = 0;
        for (int k = 0; k < 4; ++k) d += (p[k] - q[k]) * (p[k] - q[k]);
        if (d <= r2) hits.push_back(order_[i]);
      }
      return;
    }
    double diff = q[n.axis] - n.split;
    if (diff <= 0 || diff * diff <= r2) visit(n.left, q, r2, hits);
    if (diff >= 0 || diff * diff <= r2) visit(n.right, q, r2, hits);
  }

  const std::vector<Quat>& pts_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
};

// Extends f by `remaining` syllables depth first, carrying the running
// product so each prefix costs one matrix multiply.
template <typename Fn>
void extend_prefix(NormalForm& f, int remaining, const Eigen::Matrix2cd& m, Fn& fn) {
  if (remaining == 0) {
    fn(static_cast<const NormalForm&>(f), m);
    return;
  }
  static const Eigen::Matrix2cd syl[2] = {syllable_matrix(false), syllable_matrix(true)};
  for (std::uint32_t b = 0; b <= 1; ++b) {
    f.syllables = (f.syllables & ~(std::uint32_t{1} << f.n)) | (b << f.n);
    ++f.n;
    extend_prefix(f, remaining - 1, Eigen::Matrix2cd(m * syl[b]), fn);
    --f.n;
  }
  f.syllables &= ~(std::uint32_t{1} << f.n);
}

// Enumerates (T | e)(HT | SHT)* prefixes with exactly `t` T gates.
template <typename Fn>
void for_each_prefix(int t, Fn&& fn) {
  if (t == 0) {
    fn(NormalForm{}, Eigen::Matrix2cd::Identity().eval());
    return;
  }
  for (int lead = 0; lead <= 1; ++lead) {
    NormalForm f{bool(lead), 0, 0, 0};
    Eigen::Matrix2cd base = lead ? gate_matrix(GateKind::T) : Eigen::Matrix2cd::Identity().eval();
    extend_prefix(f, t - lead, base, fn);
  }
}

std::string format_angle_key(double theta) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", theta);
  return buf;
}

struct Candidate {
  int t_count;
  std::size_t length;
  std::string text;
  std::vector<GateKind> gates;
  double eps;

  bool better_than(const Candidate& o) const {
    return std::tie(t_count, length, text) < std::tie(o.t_count, o.length, o.text);
  }
};

int count_t(const std::vector<GateKind>& gates) {
  return static_cast<int>(std::count_if(gates.begin(), gates.end(), [](GateKind g) {
    return g == GateKind::T || g == GateKind::Tdg;
  }));
}

double sequence_distance(const std::vector<GateKind>& gates, double theta) {
  ExactMat2 m = ExactMat2::identity();
  for (GateKind g : gates) m = ExactMat2::gate(g) * m;
  auto e = m.to_complex();
  Eigen::Matrix2cd u;
  u << e[0], e[1], e[2], e[3];
  return quat_distance(quaternion(u), quaternion(rz_matrix(theta)));
}

std::string gates_to_string(const std::vector<GateKind>& gates) {
  std::string out;
  for (GateKind g : gates) {
    if (!out.empty()) out += ' ';
    out += gate_name(g);
  }
  return out;
}

}  // namespace

std::string CliffordTSequence::str() const { return gates_to_string(gates); }

TLikeBlock TLikeBlock::from_eighths(int k) {
  k = mod8(k);
  return TLikeBlock{bool(k & 1), bool(k & 2), bool(k & 4)};
}

Eigen::Matrix2cd rz_matrix(double theta) {
  Eigen::Matrix2cd m;
  m << std::polar(1.0, -theta / 2), 0, 0, std::polar(1.0, theta / 2);
  return m;
}

Eigen::Matrix2cd sequence_matrix(const std::vector<GateKind>& gates) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
  for (GateKind g : gates) m = gate_matrix(g) * m;
  return m;
}

std::vector<GateKind> dyadic_phase_spelling(int eighths) {
  switch (mod8(eighths)) {
    case 1: return {GateKind::T};
    case 2: return {GateKind::S};
    case 3: return {GateKind::Tdg, GateKind::Z};
    case 4: return {GateKind::Z};
    case 5: return {GateKind::T, GateKind::Z};
    case 6: return {GateKind::Sdg};
    case 7: return {GateKind::Tdg};
    default: return {};
  }
}

std::vector<GateKind> simplify_sequence(std::vector<GateKind> gates) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<GateKind> out;
    for (std::size_t i = 0; i < gates.size();) {
      if (is_diagonal_gate(gates[i])) {
        std::size_t j = i;
        int k = 0;
        while (j < gates.size() && is_diagonal_gate(gates[j])) k += diagonal_eighths(gates[j++]);
        auto spelled = dyadic_phase_spelling(k);
        if (!std::equal(spelled.begin(), spelled.end(), gates.begin() + i, gates.begin() + j) ||
            spelled.size() != j - i) {
          changed = true;
        }
        out.insert(out.end(), spelled.begin(), spelled.end());
        i = j;
        continue;
      }
      if ((gates[i] == GateKind::H || gates[i] == GateKind::X) && !out.empty() &&
          out.back() == gates[i]) {
        out.pop_back();
        changed = true;
        ++i;
        continue;
      }
      out.push_back(gates[i++]);
    }
    gates.swap(out);
  }
  return gates;
}

std::vector<GateKind> parse_gate_string(const std::string& text) {
  static const std::map<std::string, GateKind> names = {
      {"H", GateKind::H},     {"S", GateKind::S},     {"Sdg", GateKind::Sdg},
      {"S†", GateKind::Sdg},  {"T", GateKind::T},     {"Tdg", GateKind::Tdg},
      {"T†", GateKind::Tdg},  {"X", GateKind::X},     {"Z", GateKind::Z},
  };
  std::vector<GateKind> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "I") continue;
    auto it = names.find(tok);
    if (it == names.end()) throw std::invalid_argument("unknown gate '" + tok + "' in sequence");
    out.push_back(it->second);
  }
  return out;
}

struct Synthesizer::Table {
  std::vector<Quat> quats;
  std::vector<std::uint32_t> codes;
  std::unique_ptr<KdTree> tree;
};

Synthesizer::Synthesizer(SynthesisOptions opts) : opts_(opts) {
  if (opts_.table_t_count < 0 || opts_.table_t_count > 20) {
    throw std::invalid_argument("table T-count must be in [0, 20]");
  }
}

Synthesizer::~Synthesizer() = default;

const Synthesizer::Table& Synthesizer::table() {
  std::call_once(table_once_, [this] {
    auto t = std::make_unique<Table>();
    const auto& cl = cliffords();
    auto add = [&](const NormalForm& f, const Eigen::Matrix2cd& m) {
      for (int c = 0; c < 24; ++c) {
        NormalForm g = f;
        g.clifford = c;
        t->quats.push_back(quaternion(m * cl[c].matrix));
        t->codes.push_back(g.pack());
      }
    };
    for (int tc = 0; tc <= opts_.table_t_count; ++tc) for_each_prefix(tc, add);
    t->tree = std::make_unique<KdTree>(t->quats);
    table_ = std::move(t);
  });
  return *table_;
}

std::size_t Synthesizer::table_size() { return table().codes.size(); }

void Synthesizer::add_imports(const std::map<std::string, std::string>& entries) {
  std::lock_guard lock(mu_);
  for (const auto& [angle, text] : entries) imports_[angle] = parse_gate_string(text);
  cache_.clear();
}

void Synthesizer::load_import_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open import file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("import file " + path + ": " + e.what());
  }
  if (!doc.is_object()) throw std::invalid_argument("import file " + path + " must hold an object");
  std::map<std::string, std::string> entries;
  for (auto it = doc.begin(); it != doc.end(); ++it) entries[it.key()] = it.value().get<std::string>();
  add_imports(entries);
}

CliffordTSequence Synthesizer::search(double theta, double eps) {
  const Table& tab = table();
  const Eigen::Matrix2cd target_m = rz_matrix(theta);
  const Quat target = quaternion(target_m);
  const double radius = std::numbers::sqrt2 * eps * (1 + 1e-9);
  const auto& cl = cliffords();

  std::vector<std::uint32_t> hits;
  for (int ta = 0; ta == 0 || opts_.table_t_count + ta <= opts_.max_t_count; ++ta) {
    std::optional<Candidate> best;
    for_each_prefix(ta, [&](const NormalForm& prefix, const Eigen::Matrix2cd& pm) {
      Eigen::Matrix2cd rest = pm.adjoint() * target_m;
      Quat q = quaternion(rest);
      Quat nq = {-q[0], -q[1], -q[2], -q[3]};
      hits.clear();
      tab.tree->radius(q, radius, hits);
      tab.tree->radius(nq, radius, hits);
      std::sort(hits.begin(), hits.end());
      hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
      for (std::uint32_t h : hits) {
        NormalForm tail = NormalForm::unpack(tab.codes[h]);
        Eigen::Matrix2cd tail_m = cl[tail.clifford].matrix;
        for (int j = tail.n - 1; j >= 0; --j) tail_m = syllable_matrix((tail.syllables >> j) & 1) * tail_m;
        if (tail.lead_t) tail_m = gate_matrix(GateKind::T) * tail_m;
        if (quat_distance(quaternion(pm * tail_m), target) > eps) continue;
        std::vector<GateKind> gates;
        tail.spell(gates);
        prefix.spell(gates);
        gates = simplify_sequence(gates);
        Candidate cand{count_t(gates), gates.size(), gates_to_string(gates), gates, 0};
        if (!best || cand.better_than(*best)) best = std::move(cand);
      }
    });
    if (best) {
      double achieved = sequence_distance(best->gates, theta);
      if (achieved > eps * (1 + 1e-9)) continue;
      return CliffordTSequence{best->gates, achieved, best->t_count};
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "no sequence with T-count <= %d reaches eps = %.3g for theta = %.12f",
                opts_.max_t_count, eps, theta);
  throw SynthesisBudgetExceeded(buf);
}

CliffordTSequence Synthesizer::synthesize_rz(double theta, int bits) {
  if (bits < 1) throw std::invalid_argument("bits must be >= 1");
  if (bits > 30) throw std::invalid_argument("bits above 30 exceed double precision");
  if (!std::isfinite(theta)) throw std::invalid_argument("angle must be finite");
  const double eps = std::ldexp(1.0, -bits);

  Angle a = Angle::from_radians(theta);
  if (a.is_dyadic()) {
    auto gates = dyadic_phase_spelling(a.eighths_value());
    return CliffordTSequence{gates, 0.0, count_t(gates)};
  }

  double wrapped = std::fmod(theta, 2 * kPi);
  if (wrapped < 0) wrapped += 2 * kPi;
  {
    std::lock_guard lock(mu_);
    for (const auto& key : {format_angle_key(theta), format_angle_key(wrapped)}) {
      auto it = imports_.find(key);
      if (it == imports_.end()) continue;
      double d = sequence_distance(it->second, theta);
      if (d <= eps) return CliffordTSequence{it->second, d, count_t(it->second)};
    }
    auto it = cache_.find({wrapped, bits});
    if (it != cache_.end()) return it->second;
  }
  CliffordTSequence result = search(wrapped, eps);
  std::lock_guard lock(mu_);
  cache_.emplace(std::pair{wrapped, bits}, result);
  return result;
}

Synthesizer& default_synthesizer() {
  static Synthesizer instance;
  return instance;
}

namespace {

enum class RunMode { Spell, Block };

// Per-qubit rewriting. Each qubit keeps a stack of the live instructions
// touching it, so that cancelling a pair exposes the gate underneath.
LogicalCircuit rewrite_runs(const LogicalCircuit& c, RunMode mode, bool cancel_pairs) {
  struct Slot {
    Instruction op;
    bool alive = true;
    bool merged_diag = false;  // represented as a PhaseBlock until emission
    std::uint64_t cond_epoch = 0;
  };
  std::vector<Slot> slots;
  std::vector<std::vector<std::size_t>> stacks(c.num_qubits);
  std::vector<std::uint64_t> bit_epoch(c.num_bits, 0);

  auto epoch_of = [&](const Instruction& op) -> std::uint64_t {
    return op.condition ? bit_epoch[*op.condition] : 0;
  };
  auto same_condition = [&](const Slot& s, const Instruction& op) {
    return s.op.condition == op.condition && s.cond_epoch == epoch_of(op);
  };

  for (const Instruction& op : c.ops) {
    const bool single = op.qubits.size() == 1;
    std::optional<int> k;
    if (single && op.kind != GateKind::Measure && op.kind != GateKind::Reset) k = op.diagonal_eighths();
    if (k) {
      auto& st = stacks[op.qubits[0]];
      if (!st.empty()) {
        Slot& top = slots[st.back()];
        if (top.merged_diag && same_condition(top, op)) {
          top.op.phase8 = mod8(top.op.phase8 + *k);
          if (top.op.phase8 == 0) {
            top.alive = false;
            st.pop_back();
          }
          continue;
        }
      }
      if (mod8(*k) == 0) continue;
      Instruction block = Instruction::phase_block(op.qubits[0], *k);
      block.condition = op.condition;
      slots.push_back({block, true, true, epoch_of(op)});
      st.push_back(slots.size() - 1);
      continue;
    }
    if (cancel_pairs && single && (op.kind == GateKind::H || op.kind == GateKind::X)) {
      auto& st = stacks[op.qubits[0]];
      if (!st.empty()) {
        Slot& top = slots[st.back()];
        if (top.op.kind == op.kind && !top.merged_diag && same_condition(top, op)) {
          top.alive = false;
          st.pop_back();
          continue;
        }
      }
    }
    slots.push_back({op, true, false, epoch_of(op)});
    for (auto q : op.qubits) stacks[q].push_back(slots.size() - 1);
    if (op.kind == GateKind::Measure) ++bit_epoch[op.bit];
  }

  LogicalCircuit out(c.num_qubits, c.num_bits);
  for (const Slot& s : slots) {
    if (!s.alive) continue;
    if (s.merged_diag && mode == RunMode::Spell) {
      for (GateKind g : dyadic_phase_spelling(s.op.phase8)) {
        Instruction g_op = Instruction::gate(g, s.op.qubits[0]);
        g_op.condition = s.op.condition;
        out.push(std::move(g_op));
      }
    } else {
      out.push(s.op);
    }
  }
  return out;
}

}  // namespace

LogicalCircuit simplify_circuit(const LogicalCircuit& c) {
  LogicalCircuit cur = c;
  for (;;) {
    LogicalCircuit next = rewrite_runs(cur, RunMode::Spell, true);
    if (next.ops.size() == cur.ops.size() && next == cur) return next;
    cur = std::move(next);
  }
}

LogicalCircuit collapse_tlike(const LogicalCircuit& c) {
  return rewrite_runs(c, RunMode::Block, false);
}

LogicalCircuit lower_circuit(const LogicalCircuit& c, int bits, Synthesizer& synth) {
  LogicalCircuit flat = lower_two_qubit_rotations(c);
  LogicalCircuit out(flat.num_qubits, flat.num_bits);
  for (const auto& op : flat.ops) {
    std::vector<GateKind> gates;
    switch (op.kind) {
      case GateKind::RZ:
      case GateKind::Phase:
        gates = op.angle.is_dyadic() ? dyadic_phase_spelling(op.angle.eighths_value())
                                     : synth.synthesize_rz(op.angle.value(), bits).gates;
        break;
      case GateKind::PhaseBlock:
        gates = dyadic_phase_spelling(op.phase8);
        break;
      default:
        out.push(op);
        continue;
    }
    for (GateKind g : gates) {
      Instruction g_op = Instruction::gate(g, op.qubits[0]);
      g_op.condition = op.condition;
      out.push(std::move(g_op));
    }
  }
  return simplify_circuit(out);
}

}  // namespace lsqpe
