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
#include <string>
#include <string_view>
#include <vector>

namespace lsqpe {

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);

/// An n-qubit Pauli string carrying a phase i^k, k in {0,1,2,3}.
///
/// Letter j acts on qubit j. The textual form is "+XZ", "-iYI", "iZ" or a
/// bare "XZ" (phase +1); it is what logs and JSON payloads use.
class PhasedPauli {
 public:
  PhasedPauli() = default;
  explicit PhasedPauli(std::size_t num_qubits);
  explicit PhasedPauli(std::vector<Pauli> letters, int phase = 0);

  static PhasedPauli parse(std::string_view text);
  static PhasedPauli single(std::size_t num_qubits, std::size_t qubit, Pauli p);

  std::size_t size() const { return letters_.size(); }
  Pauli operator[](std::size_t q) const { return letters_[q]; }
  const std::vector<Pauli>& letters() const { return letters_; }

  /// Exponent k of the phase i^k, always in [0, 4).
  int phase() const { return phase_; }
  bool is_hermitian() const { return phase_ % 2 == 0; }
  bool is_identity() const;
  std::size_t weight() const;
  std::vector<std::size_t> support() const;

  PhasedPauli with_phase(int phase) const;
  PhasedPauli negated() const { return with_phase(phase_ + 2); }

  void set(std::size_t q, Pauli p) { letters_[q] = p; }

  std::string str() const;

  friend bool operator==(const PhasedPauli&, const PhasedPauli&) = default;

 private:
  std::vector<Pauli> letters_;
  int phase_ = 0;
};

/// Pauli group product a*b with exact phase bookkeeping.
PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b);
inline PhasedPauli operator*(const PhasedPauli& a, const PhasedPauli& b) { return multiply(a, b); }

bool commutes(const PhasedPauli& a, const PhasedPauli& b);

/// Rotation angle, either an exact multiple of pi/4 (kept modulo 8, i.e.
/// modulo 2pi) or a free real in radians.
class Angle {
 public:
  Angle() = default;

  static Angle eighths(int k);
  static Angle radians(double value);
  /// Free angle unless within 1e-12 of a multiple of pi/4.
  static Angle from_radians(double value);

  bool is_dyadic() const { return dyadic_; }
  /// Multiple of pi/4 in [0, 8); only meaningful for dyadic angles.
  int eighths_value() const { return eighths_; }
  double value() const;
  /// Like value(), but dyadic angles map into (-pi, pi].
  double signed_value() const;

  Angle operator-() const;
  Angle operator+(const Angle& other) const;

  /// Dyadic angles compare exactly; anything involving a free angle
  /// compares modulo 2pi within 1e-12.
  bool operator==(const Angle& other) const;

  std::string str() const;

 private:
  bool dyadic_ = true;
  int eighths_ = 0;
  double radians_ = 0.0;
};

/// R_P(theta) = exp(-i P theta / 2) with a phase +1 basis.
struct PauliRotation {
  PhasedPauli basis;
  Angle angle;

  /// Builds a rotation from a Hermitian basis, folding a -1 phase into
  /// the angle.
  static PauliRotation make(const PhasedPauli& signed_basis, Angle angle);

  bool operator==(const PauliRotation&) const = default;
};

}  // namespace lsqpe
