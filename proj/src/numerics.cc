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

#include "nmesc/numerics.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "nmesc/error.h"

namespace nmesc {

Matrix::Matrix(size_t rows, size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix literal");
    }
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Matrix Matrix::Identity(size_t n) {
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::Transposed() const {
  Matrix t(cols_, rows_);
  for (size_t r = 0; r < rows_; ++r) {
    for (size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  }
  return t;
}

SymMatrix::SymMatrix(const Matrix& m) : m_(m) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "symmetric matrix must be square and non-empty");
  }
  const size_t n = m.rows();
  double scale = 0.0;
  for (double v : m.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "matrix has a NaN or Inf entry");
    }
    scale = std::max(scale, std::abs(v));
  }
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > 1e-12 * scale) {
        std::ostringstream os;
        os << "asymmetry " << std::abs(m(i, j) - m(j, i)) << " at (" << i
           << "," << j << ")";
        throw Error(ErrorCode::kNotSymmetric, os.str());
      }
      m_(j, i) = m_(i, j);
    }
  }
}

namespace {

constexpr int kMaxQlIterations = 60;

// Working storage for the Householder/QL route. `z` is column-major so that
// both the reduction and the rotation updates walk contiguous memory.
struct Tridiagonal {
  size_t n;
  std::vector<double> z;
  std::vector<double> d;
  std::vector<double> e;

  double& Z(size_t row, size_t col) { return z[col * n + row]; }
};

Tridiagonal Reduce(const SymMatrix& m, bool accumulate) {
  const size_t n = m.n();
  Tridiagonal t{n, std::vector<double>(n * n), std::vector<double>(n),
                std::vector<double>(n)};
  for (size_t c = 0; c < n; ++c) {
    for (size_t r = 0; r < n; ++r) t.Z(r, c) = m(r, c);
  }
  auto& d = t.d;
  auto& e = t.e;
  for (size_t j = 0; j < n; ++j) d[j] = t.Z(n - 1, j);

  for (size_t i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (size_t k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (size_t j = 0; j < i; ++j) {
        d[j] = t.Z(i - 1, j);
        t.Z(i, j) = 0.0;
        t.Z(j, i) = 0.0;
      }
    } else {
      for (size_t k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (size_t j = 0; j < i; ++j) e[j] = 0.0;

      for (size_t j = 0; j < i; ++j) {
        f = d[j];
        t.Z(j, i) = f;
        g = e[j] + t.Z(j, j) * f;
        for (size_t k = j + 1; k <= i - 1; ++k) {
          g += t.Z(k, j) * d[k];
          e[k] += t.Z(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (size_t j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (size_t j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (size_t j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (size_t k = j; k <= i - 1; ++k) {
          t.Z(k, j) -= (f * e[k] + g * d[k]);
        }
        d[j] = t.Z(i - 1, j);
        t.Z(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  if (!accumulate) {
    for (size_t j = 0; j < n; ++j) d[j] = t.Z(j, j);
    e[0] = 0.0;
    return t;
  }

  for (size_t i = 0; i + 1 < n; ++i) {
    t.Z(n - 1, i) = t.Z(i, i);
    t.Z(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (size_t k = 0; k <= i; ++k) d[k] = t.Z(k, i + 1) / h;
      for (size_t j = 0; j <= i; ++j) {
        double g = 0.0;
        for (size_t k = 0; k <= i; ++k) g += t.Z(k, i + 1) * t.Z(k, j);
        for (size_t k = 0; k <= i; ++k) t.Z(k, j) -= g * d[k];
      }
    }
    for (size_t k = 0; k <= i; ++k) t.Z(k, i + 1) = 0.0;
  }
  for (size_t j = 0; j < n; ++j) {
    d[j] = t.Z(n - 1, j);
    t.Z(n - 1, j) = 0.0;
  }
  t.Z(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
  return t;
}

// Implicit QL on (d, e); eigenvalues end up ascending in d.
void DiagonalizeQl(Tridiagonal& t, bool accumulate) {
  const size_t n = t.n;
  auto& d = t.d;
  auto& e = t.e;
  for (size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const double eps = std::ldexp(1.0, -52);
  double f = 0.0;
  double tst1 = 0.0;
  for (size_t l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    size_t m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > kMaxQlIterations) {
          std::ostringstream os;
          os << "QL iteration cap " << kMaxQlIterations
             << " hit; residual |e| = " << std::abs(e[l]);
          throw Error(ErrorCode::kNoConvergence, os.str());
        }
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (size_t i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0;
        double c2 = c;
        double c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0;
        double s2 = 0.0;
        for (size_t i = m; i-- > l;) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          if (accumulate) {
            double* zi = &t.Z(0, i);
            double* zi1 = &t.Z(0, i + 1);
            for (size_t k = 0; k < n; ++k) {
              const double z1 = zi1[k];
              zi1[k] = s * zi[k] + c * z1;
              zi[k] = c * zi[k] - s * z1;
            }
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }

  for (size_t i = 0; i + 1 < n; ++i) {
    size_t k = i;
    double p = d[i];
    for (size_t j = i + 1; j < n; ++j) {
      if (d[j] < p) {
        k = j;
        p = d[j];
      }
    }
    if (k != i) {
      d[k] = d[i];
      d[i] = p;
      if (accumulate) {
        for (size_t j = 0; j < n; ++j) std::swap(t.Z(j, i), t.Z(j, k));
      }
    }
  }
}

}  // namespace

EigenSystem Eigh(const SymMatrix& m) {
  Tridiagonal t = Reduce(m, /*accumulate=*/true);
  DiagonalizeQl(t, /*accumulate=*/true);
  const size_t n = t.n;
  EigenSystem es{std::move(t.d), Matrix(n, n)};
  for (size_t r = 0; r < n; ++r) {
    for (size_t c = 0; c < n; ++c) es.vectors(r, c) = t.z[c * n + r];
  }
  return es;
}

std::vector<double> Eigenvalues(const SymMatrix& m) {
  Tridiagonal t = Reduce(m, /*accumulate=*/false);
  DiagonalizeQl(t, /*accumulate=*/false);
  return std::move(t.d);
}

EigenSystem JacobiEigh(const SymMatrix& m, const JacobiOptions& options) {
  const size_t n = m.n();
  Matrix a = m.matrix();
  Matrix v = Matrix::Identity(n);

  double frobenius = 0.0;
  for (double x : a.data()) frobenius += x * x;
  frobenius = std::sqrt(frobenius);
  const double threshold = options.relative_tolerance * frobenius;

  auto off_diagonal = [&]() {
    double off = 0.0;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (i != j) off += a(i, j) * a(i, j);
      }
    }
    return std::sqrt(off);
  };

  int sweep = 0;
  for (double off = off_diagonal(); off > threshold; off = off_diagonal()) {
    if (sweep++ == options.max_sweeps) {
      std::ostringstream os;
      os << "Jacobi sweep cap " << options.max_sweeps
         << " hit; off-diagonal norm " << off;
      throw Error(ErrorCode::kNoConvergence, os.str());
    }
    for (size_t p = 0; p + 1 < n; ++p) {
      for (size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t x, size_t y) { return a(x, x) < a(y, y); });
  EigenSystem es{std::vector<double>(n), Matrix(n, n)};
  for (size_t c = 0; c < n; ++c) {
    es.values[c] = a(order[c], order[c]);
    for (size_t r = 0; r < n; ++r) es.vectors(r, c) = v(r, order[c]);
  }
  return es;
}

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace nmesc
