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

#include <array>
#include <complex>
#include <cstdint>
#include <string>

#include "lsqpe/circuit.h"

namespace lsqpe {

// Exact arithmetic in Z[1/sqrt2, i]. A value is
// (a + b sqrt2 + i (c + d sqrt2)) / sqrt2^k, kept with the smallest k >= 0.
struct RingElement {
  std::int64_t a = 0, b = 0, c = 0, d = 0;
  int k = 0;

  static RingElement integer(std::int64_t n) { return RingElement{n, 0, 0, 0, 0}; }
  static RingElement imaginary_unit() { return RingElement{0, 0, 1, 0, 0}; }
  /// e^{i pi / 4} = (1 + i) / sqrt2.
  static RingElement omega() { return RingElement{1, 0, 1, 0, 1}.reduced(); }
  static RingElement inv_sqrt2() { return RingElement{1, 0, 0, 0, 1}; }

  RingElement reduced() const;
  RingElement conj() const;
  std::complex<double> to_complex() const;
  bool is_zero() const { return a == 0 && b == 0 && c == 0 && d == 0; }

  friend RingElement operator+(const RingElement& x, const RingElement& y);
  friend RingElement operator-(const RingElement& x);
  friend RingElement operator-(const RingElement& x, const RingElement& y) { return x + (-y); }
  friend RingElement operator*(const RingElement& x, const RingElement& y);
  friend bool operator==(const RingElement& x, const RingElement& y);
  friend auto operator<=>(const RingElement& x, const RingElement& y) = default;
};

/// 2x2 matrix over the ring.
struct ExactMat2 {
  std::array<RingElement, 4> m{};  // row-major

  static ExactMat2 identity();
  /// Matrix of a single-qubit Clifford+T gate (X, Z, H, S, Sdg, T, Tdg).
  static ExactMat2 gate(GateKind kind);

  const RingElement& operator()(int r, int c) const { return m[2 * r + c]; }
  RingElement& operator()(int r, int c) { return m[2 * r + c]; }

  ExactMat2 adjoint() const;
  ExactMat2 scaled(const RingElement& s) const;
  std::array<std::complex<double>, 4> to_complex() const;

  /// Representative of the class {omega^j M}: the smallest of the eight
  /// phase multiples under the lexicographic order of the entries.
  ExactMat2 canonical_mod_phase() const;
  std::string key() const;

  friend ExactMat2 operator*(const ExactMat2& x, const ExactMat2& y);
  friend bool operator==(const ExactMat2& x, const ExactMat2& y) = default;
  friend auto operator<=>(const ExactMat2& x, const ExactMat2& y) = default;
};

}  // namespace lsqpe
