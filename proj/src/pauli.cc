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

#include "lsqpe/pauli.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsqpe {

namespace {

constexpr double kAngleTolerance = 1e-12;

int mod(int a, int m) { return ((a % m) + m) % m; }

double wrap_two_pi(double x) {
  constexpr double two_pi = 2 * std::numbers::pi;
  double r = std::fmod(x, two_pi);
  if (r < 0) r += two_pi;
  return r;
}

// Phase exponent of the single-letter product a*b (as a power of i).
int letter_product(Pauli a, Pauli b, Pauli& out) {
  auto ai = static_cast<int>(a);
  auto bi = static_cast<int>(b);
  out = static_cast<Pauli>(ai ^ bi);
  if (a == Pauli::I || b == Pauli::I || a == b) return 0;
  // X*Y = iZ, Y*Z = iX, Z*X = iY; reversed order gives -i.
  bool cyclic = (a == Pauli::X && b == Pauli::Y) || (a == Pauli::Y && b == Pauli::Z) ||
                (a == Pauli::Z && b == Pauli::X);
  return cyclic ? 1 : 3;
}

}  // namespace

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

PhasedPauli::PhasedPauli(std::size_t num_qubits) : letters_(num_qubits, Pauli::I) {}

PhasedPauli::PhasedPauli(std::vector<Pauli> letters, int phase)
    : letters_(std::move(letters)), phase_(mod(phase, 4)) {}

PhasedPauli PhasedPauli::parse(std::string_view text) {
  int phase = 0;
  std::size_t pos = 0;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') phase = 2;
    ++pos;
  }
  if (pos < text.size() && text[pos] == 'i') {
    phase += 1;
    ++pos;
  }
  std::vector<Pauli> letters;
  for (; pos < text.size(); ++pos) {
    switch (text[pos]) {
      case 'I': case '_': letters.push_back(Pauli::I); break;
      case 'X': letters.push_back(Pauli::X); break;
      case 'Y': letters.push_back(Pauli::Y); break;
      case 'Z': letters.push_back(Pauli::Z); break;
      default:
        throw std::invalid_argument("bad Pauli string '" + std::string(text) + "'");
    }
  }
  if (letters.empty()) throw std::invalid_argument("empty Pauli string");
  return PhasedPauli(std::move(letters), phase);
}

PhasedPauli PhasedPauli::single(std::size_t num_qubits, std::size_t qubit, Pauli p) {
  if (qubit >= num_qubits) throw std::out_of_range("qubit index out of range");
  PhasedPauli result(num_qubits);
  result.letters_[qubit] = p;
  return result;
}

bool PhasedPauli::is_identity() const { return weight() == 0; }

std::size_t PhasedPauli::weight() const {
  std::size_t w = 0;
  for (Pauli p : letters_) w += p != Pauli::I;
  return w;
}

std::vector<std::size_t> PhasedPauli::support() const {
  std::vector<std::size_t> out;
  for (std::size_t q = 0; q < letters_.size(); ++q) {
    if (letters_[q] != Pauli::I) out.push_back(q);
  }
  return out;
}

PhasedPauli PhasedPauli::with_phase(int phase) const {
  PhasedPauli copy = *this;
  copy.phase_ = mod(phase, 4);
  return copy;
}

std::string PhasedPauli::str() const {
  static constexpr const char* prefixes[] = {"+", "+i", "-", "-i"};
  std::string out = prefixes[phase_];
  for (Pauli p : letters_) out.push_back(pauli_char(p));
  return out;
}

PhasedPauli multiply(const PhasedPauli& a, const PhasedPauli& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Pauli length mismatch: " + a.str() + " vs " + b.str());
  }
  std::vector<Pauli> letters(a.size());
  int phase = a.phase() + b.phase();
  for (std::size_t q = 0; q < a.size(); ++q) phase += letter_product(a[q], b[q], letters[q]);
  return PhasedPauli(std::move(letters), phase);
}

bool commutes(const PhasedPauli& a, const PhasedPauli& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("Pauli length mismatch: " + a.str() + " vs " + b.str());
  }
  std::size_t clashes = 0;
  for (std::size_t q = 0; q < a.size(); ++q) {
    clashes += a[q] != Pauli::I && b[q] != Pauli::I && a[q] != b[q];
  }
  return clashes % 2 == 0;
}

Angle Angle::eighths(int k) {
  Angle a;
  a.dyadic_ = true;
  a.eighths_ = mod(k, 8);
  return a;
}

Angle Angle::radians(double value) {
  Angle a;
  a.dyadic_ = false;
  a.radians_ = value;
  return a;
}

Angle Angle::from_radians(double value) {
  double k = value / (std::numbers::pi / 4);
  double nearest = std::round(k);
  if (std::abs(value - nearest * std::numbers::pi / 4) < kAngleTolerance) {
    return eighths(static_cast<int>(std::fmod(nearest, 8.0)));
  }
  return radians(value);
}

double Angle::value() const { return dyadic_ ? eighths_ * std::numbers::pi / 4 : radians_; }

double Angle::signed_value() const {
  if (!dyadic_) return radians_;
  return (eighths_ > 4 ? eighths_ - 8 : eighths_) * std::numbers::pi / 4;
}

Angle Angle::operator-() const { return dyadic_ ? eighths(-eighths_) : radians(-radians_); }

Angle Angle::operator+(const Angle& other) const {
  if (dyadic_ && other.dyadic_) return eighths(eighths_ + other.eighths_);
  return from_radians(value() + other.value());
}

bool Angle::operator==(const Angle& other) const {
  if (dyadic_ && other.dyadic_) return eighths_ == other.eighths_;
  double diff = wrap_two_pi(value() - other.value());
  return diff < kAngleTolerance || 2 * std::numbers::pi - diff < kAngleTolerance;
}

std::string Angle::str() const {
  if (!dyadic_) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", radians_);
    return buf;
  }
  static constexpr const char* names[] = {"0",     "+pi/4", "+pi/2", "+3pi/4",
                                          "pi",    "-3pi/4", "-pi/2", "-pi/4"};
  return names[eighths_];
}

PauliRotation PauliRotation::make(const PhasedPauli& signed_basis, Angle angle) {
  if (!signed_basis.is_hermitian()) {
    throw std::invalid_argument("rotation basis must be Hermitian: " + signed_basis.str());
  }
  if (signed_basis.phase() == 2) return {signed_basis.with_phase(0), -angle};
  return {signed_basis, angle};
}

}  // namespace lsqpe
