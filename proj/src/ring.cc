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

#include "lsqpe/ring.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace lsqpe {

namespace {

// Multiplies the numerator by sqrt2 once.
RingElement raise(RingElement x) {
  return RingElement{2 * x.b, x.a, 2 * x.d, x.c, x.k + 1};
}

RingElement at_level(RingElement x, int k) {
  while (x.k < k) x = raise(x);
  return x;
}

}  // namespace

RingElement RingElement::reduced() const {
  RingElement x = *this;
  if (x.is_zero()) return RingElement{};
  while (x.k > 0 && x.a % 2 == 0 && x.c % 2 == 0) {
    x = RingElement{x.b, x.a / 2, x.d, x.c / 2, x.k - 1};
  }
  return x;
}

RingElement RingElement::conj() const { return RingElement{a, b, -c, -d, k}; }

std::complex<double> RingElement::to_complex() const {
  const double s = std::numbers::sqrt2;
  double scale = std::pow(s, -k);
  return {(a + b * s) * scale, (c + d * s) * scale};
}

RingElement operator+(const RingElement& x, const RingElement& y) {
  int k = std::max(x.k, y.k);
  RingElement p = at_level(x, k), q = at_level(y, k);
  return RingElement{p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d, k}.reduced();
}

RingElement operator-(const RingElement& x) { return RingElement{-x.a, -x.b, -x.c, -x.d, x.k}; }

RingElement operator*(const RingElement& x, const RingElement& y) {
  // (p + i q)(r + i s) with p, q, r, s in Z[sqrt2].
  auto mul = [](std::int64_t a, std::int64_t b, std::int64_t e, std::int64_t f) {
    return std::pair{a * e + 2 * b * f, a * f + b * e};
  };
  auto [pr0, pr1] = mul(x.a, x.b, y.a, y.b);
  auto [qs0, qs1] = mul(x.c, x.d, y.c, y.d);
  auto [ps0, ps1] = mul(x.a, x.b, y.c, y.d);
  auto [qr0, qr1] = mul(x.c, x.d, y.a, y.b);
  return RingElement{pr0 - qs0, pr1 - qs1, ps0 + qr0, ps1 + qr1, x.k + y.k}.reduced();
}

bool operator==(const RingElement& x, const RingElement& y) {
  RingElement p = x.reduced(), q = y.reduced();
  return p.a == q.a && p.b == q.b && p.c == q.c && p.d == q.d && p.k == q.k;
}

ExactMat2 ExactMat2::identity() {
  ExactMat2 r;
  r(0, 0) = r(1, 1) = RingElement::integer(1);
  return r;
}

ExactMat2 ExactMat2::gate(GateKind kind) {
  ExactMat2 r = identity();
  const RingElement one = RingElement::integer(1);
  const RingElement i = RingElement::imaginary_unit();
  const RingElement w = RingElement::omega();
  switch (kind) {
    case GateKind::X:
      r(0, 0) = r(1, 1) = RingElement{};
      r(0, 1) = r(1, 0) = one;
      break;
    case GateKind::Z: r(1, 1) = -one; break;
    case GateKind::S: r(1, 1) = i; break;
    case GateKind::Sdg: r(1, 1) = -i; break;
    case GateKind::T: r(1, 1) = w; break;
    case GateKind::Tdg: r(1, 1) = w.conj(); break;
    case GateKind::H: {
      RingElement h = RingElement::inv_sqrt2();
      r(0, 0) = r(0, 1) = r(1, 0) = h;
      r(1, 1) = -h;
      break;
    }
    default:
      throw std::invalid_argument("no exact matrix for " + gate_name(kind));
  }
  return r;
}

ExactMat2 ExactMat2::adjoint() const {
  ExactMat2 r;
  r(0, 0) = (*this)(0, 0).conj();
  r(0, 1) = (*this)(1, 0).conj();
  r(1, 0) = (*this)(0, 1).conj();
  r(1, 1) = (*this)(1, 1).conj();
  return r;
}

ExactMat2 ExactMat2::scaled(const RingElement& s) const {
  ExactMat2 r;
  for (int j = 0; j < 4; ++j) r.m[j] = m[j] * s;
  return r;
}

std::array<std::complex<double>, 4> ExactMat2::to_complex() const {
  return {m[0].to_complex(), m[1].to_complex(), m[2].to_complex(), m[3].to_complex()};
}

ExactMat2 ExactMat2::canonical_mod_phase() const {
  ExactMat2 best = *this;
  ExactMat2 cur = *this;
  const RingElement w = RingElement::omega();
  for (int j = 1; j < 8; ++j) {
    cur = cur.scaled(w);
    if (cur < best) best = cur;
  }
  return best;
}

std::string ExactMat2::key() const {
  std::ostringstream out;
  for (const auto& e : m) out << e.a << ',' << e.b << ',' << e.c << ',' << e.d << ',' << e.k << ';';
  return out.str();
}

ExactMat2 operator*(const ExactMat2& x, const ExactMat2& y) {
  ExactMat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}

}  // namespace lsqpe
