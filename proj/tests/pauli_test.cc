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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <numbers>

using namespace lsqpe;

namespace {

using C = std::complex<double>;

Eigen::Matrix2cd letter_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, C(0, -1), C(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

// Kronecker product with letter 0 as the most significant factor; any fixed
// ordering works for checking products.
Eigen::MatrixXcd dense(const PhasedPauli& p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
  for (Pauli l : p.letters()) {
    Eigen::Matrix2cd f = letter_matrix(l);
    Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) next.block(2 * r, 2 * c, 2, 2) = m(r, c) * f;
    m = next;
  }
  static const C phases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return phases[p.phase()] * m;
}

std::vector<PhasedPauli> all_paulis(std::size_t n, bool with_phases) {
  std::vector<PhasedPauli> out;
  std::size_t count = std::size_t{1} << (2 * n);
  for (std::size_t code = 0; code < count; ++code) {
    std::vector<Pauli> letters;
    for (std::size_t q = 0; q < n; ++q) letters.push_back(static_cast<Pauli>((code >> (2 * q)) & 3));
    for (int ph = 0; ph < (with_phases ? 4 : 1); ++ph) out.emplace_back(letters, ph);
  }
  return out;
}

}  // namespace

TEST(pauli, parse_and_print) {
  EXPECT_EQ(PhasedPauli::parse("XZ").str(), "+XZ");
  EXPECT_EQ(PhasedPauli::parse("-iYI").str(), "-iYI");
  EXPECT_EQ(PhasedPauli::parse("iZ").phase(), 1);
  EXPECT_EQ(PhasedPauli::parse("-X").phase(), 2);
  EXPECT_THROW(PhasedPauli::parse("XQ"), std::invalid_argument);
  EXPECT_THROW(PhasedPauli::parse("-"), std::invalid_argument);
}

TEST(pauli, single_qubit_products) {
  EXPECT_EQ(multiply(PhasedPauli::parse("X"), PhasedPauli::parse("Z")), PhasedPauli::parse("-iY"));
  EXPECT_EQ(multiply(PhasedPauli::parse("X"), PhasedPauli::parse("Y")), PhasedPauli::parse("iZ"));
  EXPECT_EQ(multiply(PhasedPauli::parse("Y"), PhasedPauli::parse("Y")), PhasedPauli::parse("I"));
}

TEST(pauli, disjoint_supports) {
  EXPECT_EQ(PhasedPauli::parse("ZI") * PhasedPauli::parse("IZ"), PhasedPauli::parse("ZZ"));
}

TEST(pauli, zx_times_iz) {
  PhasedPauli prod = PhasedPauli::parse("ZX") * PhasedPauli::parse("IZ");
  EXPECT_EQ(prod, PhasedPauli::parse("-iZY"));
  EXPECT_EQ(prod.with_phase(prod.phase() + 1), PhasedPauli::parse("ZY"));
}

TEST(pauli, commutation_examples) {
  EXPECT_FALSE(commutes(PhasedPauli::parse("ZX"), PhasedPauli::parse("IZ")));
  EXPECT_TRUE(commutes(PhasedPauli::parse("ZZ"), PhasedPauli::parse("XX")));
  for (const auto& p : all_paulis(2, false)) EXPECT_TRUE(commutes(p, p));
}

TEST(pauli, length_mismatch) {
  EXPECT_THROW(multiply(PhasedPauli::parse("X"), PhasedPauli::parse("XX")), std::invalid_argument);
  EXPECT_THROW(commutes(PhasedPauli::parse("X"), PhasedPauli::parse("XX")), std::invalid_argument);
}

TEST(pauli, products_match_matrices) {
  for (std::size_t n = 1; n <= 2; ++n) {
    auto ps = all_paulis(n, true);
    for (const auto& a : ps) {
      for (const auto& b : ps) {
        Eigen::MatrixXcd expected = dense(a) * dense(b);
        EXPECT_LT((dense(multiply(a, b)) - expected).norm(), 1e-12) << a.str() << " " << b.str();
      }
    }
  }
}

TEST(pauli, commutation_matches_matrices) {
  for (std::size_t n = 1; n <= 2; ++n) {
    auto ps = all_paulis(n, false);
    for (const auto& a : ps) {
      for (const auto& b : ps) {
        Eigen::MatrixXcd ab = dense(a) * dense(b), ba = dense(b) * dense(a);
        EXPECT_EQ(commutes(a, b), (ab - ba).norm() < 1e-12);
        PhasedPauli pab = a * b, pba = b * a;
        bool sign_only = pab == pba || pab == pba.negated();
        EXPECT_TRUE(sign_only);
        EXPECT_EQ(commutes(a, b), pab == pba);
      }
    }
  }
}

TEST(pauli, associativity) {
  auto ps = all_paulis(2, true);
  for (std::size_t i = 0; i < ps.size(); i += 3)
    for (std::size_t j = 0; j < ps.size(); j += 5)
      for (std::size_t k = 0; k < ps.size(); k += 7)
        EXPECT_EQ((ps[i] * ps[j]) * ps[k], ps[i] * (ps[j] * ps[k]));
}

TEST(pauli, hermitian_squares_are_real) {
  for (const auto& p : all_paulis(2, true)) {
    if (!p.is_hermitian()) continue;
    EXPECT_EQ((p * p).phase() % 2, 0);
  }
}

TEST(angle, dyadic_reduction) {
  EXPECT_EQ(Angle::eighths(9).eighths_value(), 1);
  EXPECT_EQ(Angle::eighths(-1).eighths_value(), 7);
  EXPECT_EQ(Angle::eighths(3) + Angle::eighths(6), Angle::eighths(1));
  EXPECT_EQ(-Angle::eighths(2), Angle::eighths(6));
  EXPECT_EQ(Angle::eighths(6).str(), "-pi/2");
}

TEST(angle, free_angles) {
  Angle a = Angle::from_radians(std::numbers::pi / 4);
  EXPECT_TRUE(a.is_dyadic());
  EXPECT_EQ(a.eighths_value(), 1);
  Angle b = Angle::from_radians(0.3);
  EXPECT_FALSE(b.is_dyadic());
  EXPECT_EQ(b, Angle::radians(0.3 + 2 * std::numbers::pi));
  EXPECT_FALSE(b == Angle::radians(0.3 + 1e-9));
  EXPECT_TRUE((b + Angle::radians(std::numbers::pi / 4 - 0.3)).is_dyadic());
  EXPECT_DOUBLE_EQ(Angle::eighths(6).signed_value(), -std::numbers::pi / 2);
}

TEST(rotation, sign_folds_into_angle) {
  PauliRotation r = PauliRotation::make(PhasedPauli::parse("-ZY"), Angle::eighths(1));
  EXPECT_EQ(r.basis, PhasedPauli::parse("ZY"));
  EXPECT_EQ(r.angle, Angle::eighths(7));
  EXPECT_THROW(PauliRotation::make(PhasedPauli::parse("iZ"), Angle::eighths(1)),
               std::invalid_argument);
}
