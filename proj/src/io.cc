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

#include "lsqpe/io.h"

#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <stdexcept>

namespace lsqpe {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

namespace {

const std::map<std::string, GateKind>& prep_gates() {
  static const std::map<std::string, GateKind> gates = {
      {"x", GateKind::X}, {"z", GateKind::Z}, {"h", GateKind::H}, {"s", GateKind::S}, {"sdg", GateKind::Sdg}};
  return gates;
}

}  // namespace

Hamiltonian hamiltonian_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("Hamiltonian JSON: ") + e.what());
  }
  Hamiltonian h;
  try {
    int n = j.at("n").get<int>();
    if (n < 1) throw std::invalid_argument("Hamiltonian: n must be positive");
    h.num_qubits = static_cast<std::uint32_t>(n);
    for (const auto& t : j.at("terms")) {
      h.terms.push_back({t.at("coeff").get<double>(), PhasedPauli::parse(t.at("pauli").get<std::string>())});
    }
    if (j.contains("prep")) {
      for (const auto& g : j.at("prep")) {
        auto name = g.at("gate").get<std::string>();
        auto it = prep_gates().find(name);
        if (it == prep_gates().end()) throw std::invalid_argument("Hamiltonian: unsupported prep gate " + name);
        int q = g.at("qubit").get<int>();
        if (q < 0 || q >= n) throw std::invalid_argument("Hamiltonian: prep qubit out of range");
        h.prep.push_back(Instruction::gate(it->second, static_cast<std::uint32_t>(q)));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("Hamiltonian JSON: ") + e.what());
  }
  h.validate();
  return h;
}

std::string hamiltonian_to_json(const Hamiltonian& h) {
  nlohmann::ordered_json j;
  j["n"] = h.num_qubits;
  j["terms"] = nlohmann::ordered_json::array();
  for (const auto& t : h.terms) {
    nlohmann::ordered_json term;
    term["coeff"] = t.coeff;
    term["pauli"] = t.basis.str().substr(1);
    j["terms"].push_back(term);
  }
  j["prep"] = nlohmann::ordered_json::array();
  for (const auto& g : h.prep) {
    std::string name;
    for (const auto& [k, v] : prep_gates()) {
      if (v == g.kind) name = k;
    }
    if (name.empty()) throw std::invalid_argument("Hamiltonian: prep gate has no JSON form");
    j["prep"].push_back({{"gate", name}, {"qubit", g.qubits[0]}});
  }
  return j.dump(2) + "\n";
}

}  // namespace lsqpe
