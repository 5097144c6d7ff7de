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

#include <stdexcept>
#include <string>

#include "lsqpe/circuit.h"

namespace lsqpe {

/// Parse failure at a 1-based line and column.
class QasmError : public std::runtime_error {
 public:
  QasmError(int line, int column, const std::string& message);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// OpenQASM 2.0 subset: qreg, creg, x, z, h, s, sdg, t, tdg, cx, rz(expr),
/// measure, reset and `if (reg == 1) op` on single-bit registers. The
/// non-standard `if (c[k] == 1)` form is accepted as well. Registers are
/// flattened in declaration order. Angle expressions use numbers, pi,
/// + - * / and parentheses; multiples of pi/4 become exact angles.
LogicalCircuit parse_qasm(const std::string& text);

/// Deterministic emission: one `qreg q[n]`, one single-bit register per
/// classical bit (c0, c1, ...) so every condition is valid QASM 2.0, then
/// one statement per line. Exact angles print as pi expressions and free
/// ones in shortest round-trip form. Throws std::invalid_argument for
/// Phase, CPhase, PauliRot and PhaseBlock (see phases_to_rz).
std::string emit_qasm(const LogicalCircuit& c);

/// Lowers two-qubit rotations, then rewrites Phase and PhaseBlock gates as
/// RZ. The two differ by a global phase, which a condition cannot expose.
LogicalCircuit phases_to_rz(const LogicalCircuit& c);

}  // namespace lsqpe
