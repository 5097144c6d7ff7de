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

#include <string>

#include "lsqpe/qpe.h"

namespace lsqpe {

/// Whole file as a string. Throws std::runtime_error naming the path.
std::string read_text(const std::string& path);
/// Creates or truncates `path`. Throws std::runtime_error naming the path.
void write_text(const std::string& path, const std::string& text);

/// {"n": 1, "terms": [{"coeff": 0.78, "pauli": "Z"}, ...],
///  "prep": [{"gate": "x", "qubit": 0}]}. "prep" is optional and takes
/// x, z, h, s and sdg on data-relative qubits. Throws std::invalid_argument.
Hamiltonian hamiltonian_from_json(const std::string& text);
std::string hamiltonian_to_json(const Hamiltonian& h);

}  // namespace lsqpe
