// Copyright 2026 The nme-sc Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nmesc/error.h"
#include "nmesc/numerics.h"
#include "nmesc/testbench.h"

namespace nmesc {
namespace {

Matrix RandomSymmetric(size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      m(i, j) = u(rng);
      m(j, i) = m(i, j);
    }
  }
  return m;
}

void ExpectValidEigenSystem(const SymMatrix& m, const EigenSystem& es) {
  const size_t n = m.n();
  ASSERT_EQ(es.values.size(), n);
  for (size_t i = 0; i + 1 < n; ++i) EXPECT_LE(es.values[i], es.values[i + 1]);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a; b < n; ++b) {
      double dot = 0.0;
      for (size_t r = 0; r < n; ++r) dot += es.vectors(r, a) * es.vectors(r, b);
      if (a == b) {
        EXPECT_NEAR(dot, 1.0, 1e-9);
      } else {
        EXPECT_LE(std::abs(dot), 1e-8);
      }
    }
    double resid = 0.0;
    for (size_t r = 0; r < n; ++r) {
      double mv = 0.0;
      for (size_t c = 0; c < n; ++c) mv += m(r, c) * es.vectors(c, a);
      resid = std::max(resid, std::abs(mv - es.values[a] * es.vectors(r, a)));
    }
    EXPECT_LE(resid, 1e-8 * std::max(1.0, std::abs(es.values[a])));
  }
}

TEST(SymMatrixTest, RejectsAsymmetricAndNonFinite) {
  EXPECT_THROW(SymMatrix(Matrix{{1, 2}, {3, 1}}), Error);
  try {
    SymMatrix(Matrix{{1, NAN}, {NAN, 1}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonFinite);
  }
  EXPECT_THROW(SymMatrix(Matrix(2, 3)), Error);
}

TEST(SymMatrixTest, MirrorsTinyAsymmetry) {
  SymMatrix m(Matrix{{1.0, 0.5}, {0.5 + 1e-14, 1.0}});
  EXPECT_EQ(m(0, 1), m(1, 0));
}

TEST(EighTest, TwoNodePathLaplacian) {
  const EigenSystem es = Eigh(SymMatrix(Matrix{{1, -1}, {-1, 1}}));
  EXPECT_NEAR(es.values[0], 0.0, 1e-15);
  EXPECT_NEAR(es.values[1], 2.0, 1e-15);
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(es.vectors(0, 0)), h, 1e-12);
  EXPECT_NEAR(es.vectors(0, 0), es.vectors(1, 0), 1e-12);
  EXPECT_NEAR(es.vectors(0, 1), -es.vectors(1, 1), 1e-12);
}

TEST(EighTest, Identity) {
  const EigenSystem es = Eigh(SymMatrix(Matrix::Identity(3)));
  for (double v : es.values) EXPECT_DOUBLE_EQ(v, 1.0);
  ExpectValidEigenSystem(SymMatrix(Matrix::Identity(3)), es);
}

TEST(EighTest, OneByOne) {
  const EigenSystem es = Eigh(SymMatrix(Matrix{{-3.5}}));
  EXPECT_EQ(es.values[0], -3.5);
  EXPECT_EQ(es.vectors(0, 0), 1.0);
}

TEST(EighTest, ZeroMatrix) {
  const EigenSystem es = Eigh(SymMatrix(Matrix(5, 5)));
  for (double v : es.values) EXPECT_EQ(v, 0.0);
  ExpectValidEigenSystem(SymMatrix(Matrix(5, 5)), es);
}

TEST(EighTest, RandomSixBySixMatchesBisectionOracle) {
  std::mt19937_64 rng(6);
  const Matrix m = RandomSymmetric(6, rng);
  const std::vector<double> oracle = testbench::CharPolyEigenvalues(m);
  const EigenSystem es = Eigh(SymMatrix(m));
  for (size_t i = 0; i < 6; ++i) EXPECT_NEAR(es.values[i], oracle[i], 1e-8);
  ExpectValidEigenSystem(SymMatrix(m), es);
}

TEST(EighTest, EigenvaluesOnlyIsBitIdentical) {
  std::mt19937_64 rng(11);
  for (size_t n : {1, 2, 7, 40}) {
    const SymMatrix m(RandomSymmetric(n, rng));
    EXPECT_EQ(Eigenvalues(m), Eigh(m).values);
  }
}

TEST(EighTest, AgreesWithJacobi) {
  std::mt19937_64 rng(3);
  for (size_t n : {2, 5, 12, 30}) {
    const SymMatrix m(RandomSymmetric(n, rng));
    const EigenSystem ql = Eigh(m);
    const EigenSystem jac = JacobiEigh(m);
    ExpectValidEigenSystem(m, ql);
    ExpectValidEigenSystem(m, jac);
    for (size_t i = 0; i < n; ++i) EXPECT_NEAR(ql.values[i], jac.values[i], 1e-10);
  }
}

TEST(EighTest, TraceAndPermutationProperties) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 2 + trial % 9;
    const Matrix m = RandomSymmetric(n, rng);
    const std::vector<double> values = Eigh(SymMatrix(m)).values;
    double trace = 0.0;
    double sum = 0.0;
    double max_entry = 0.0;
    for (size_t i = 0; i < n; ++i) trace += m(i, i);
    for (double v : values) sum += v;
    for (double v : m.data()) max_entry = std::max(max_entry, std::abs(v));
    EXPECT_NEAR(sum, trace, 1e-8 * n * max_entry);

    std::vector<size_t> perm(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    Matrix pm(n, n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) pm(i, j) = m(perm[i], perm[j]);
    }
    const std::vector<double> permuted = Eigh(SymMatrix(pm)).values;
    for (size_t i = 0; i < n; ++i) EXPECT_NEAR(permuted[i], values[i], 1e-9);
  }
}

TEST(EighTest, PsdLaplacianHasNonNegativeSpectrum) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t n = 3 + trial;
    Matrix l(n, n);
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        const double w = u(rng) < 0.3 ? 0.5 : 0.0;
        l(i, j) = l(j, i) = -w;
        l(i, i) += w;
        l(j, j) += w;
      }
    }
    for (double v : Eigh(SymMatrix(l)).values) EXPECT_GE(v, -1e-9);
  }
}

TEST(JacobiTest, SweepCapReportsNoConvergence) {
  std::mt19937_64 rng(1);
  const SymMatrix m(RandomSymmetric(6, rng));
  try {
    JacobiEigh(m, {.max_sweeps = 0, .relative_tolerance = 1e-12});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNoConvergence);
    EXPECT_NE(std::string(e.what()).find("cap 0"), std::string::npos);
  }
}

}  // namespace
}  // namespace nmesc
