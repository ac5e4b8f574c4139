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

#ifndef NMESC_NUMERICS_H_
#define NMESC_NUMERICS_H_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace nmesc {

// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(size_t rows, size_t cols, double fill = 0.0);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix Identity(size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  double& operator()(size_t r, size_t c) { return data_[r * cols_ + c]; }
  double operator()(size_t r, size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> data() const { return data_; }

  Matrix Transposed() const;

  bool operator==(const Matrix& other) const = default;

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  std::vector<double> data_;
};

// Square matrix that is exactly symmetric. Construction accepts input whose
// asymmetry is within 1e-12 of its largest entry and mirrors the lower
// triangle onto the upper one.
class SymMatrix {
 public:
  explicit SymMatrix(const Matrix& m);

  size_t n() const { return m_.rows(); }
  double operator()(size_t r, size_t c) const { return m_(r, c); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

// Ascending eigenvalues; column i of `vectors` is the unit eigenvector of
// values[i].
struct EigenSystem {
  std::vector<double> values;
  Matrix vectors;
};

// Householder tridiagonalization followed by implicit QL with Wilkinson
// shifts. Deterministic for identical input.
EigenSystem Eigh(const SymMatrix& m);

// Same arithmetic as Eigh() without accumulating the transformations; the
// returned values are bit-identical to Eigh(m).values.
std::vector<double> Eigenvalues(const SymMatrix& m);

struct JacobiOptions {
  int max_sweeps = 100;
  double relative_tolerance = 1e-12;
};

// Cyclic Jacobi rotations. Slower than Eigh() but an independent route.
EigenSystem JacobiEigh(const SymMatrix& m, const JacobiOptions& options = {});

double SquaredDistance(std::span<const double> a, std::span<const double> b);

struct KMeansConfig {
  int restarts = 10;
  int max_iterations = 300;
  uint64_t seed = 42;
};

struct KMeansResult {
  std::vector<int> labels;
  Matrix centroids;
  double inertia = 0.0;
  int iterations = 0;
  // Inertia after each centroid update of the winning restart.
  std::vector<double> inertia_history;
};

// Lloyd iterations from k-means++ seeding, best of `restarts` runs. Restart r
// draws from seed + r.
KMeansResult KMeans(const Matrix& points, int k, const KMeansConfig& config);

}  // namespace nmesc

#endif  // NMESC_NUMERICS_H_
