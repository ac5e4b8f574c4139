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

#include "nmesc/affinity.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "nmesc/error.h"

namespace nmesc {

const char* AffinityStateName(AffinityState state) {
  switch (state) {
    case AffinityState::kRawCosine: return "RawCosine";
    case AffinityState::kKernelized: return "Kernelized";
    case AffinityState::kBinarized: return "Binarized";
    case AffinityState::kSymmetrized: return "Symmetrized";
  }
  return "Unknown";
}

namespace {

void RequireState(const AffinityMatrix& a, AffinityState want) {
  if (a.state() != want) {
    throw Error(ErrorCode::kWrongState,
                std::string("expected ") + AffinityStateName(want) +
                    " affinity, got " + AffinityStateName(a.state()));
  }
}

double Norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

double Dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Pairwise cosine similarities with an exact unit diagonal.
Matrix CosineMatrix(const EmbeddingSequence& emb) {
  const size_t n = emb.size();
  std::vector<double> norms(n);
  for (size_t i = 0; i < n; ++i) {
    norms[i] = Norm(emb[i].embedding);
    if (!(norms[i] > 1e-12)) {
      throw Error(ErrorCode::kZeroNorm,
                  "segment " + std::to_string(i) + " has a zero-norm embedding");
    }
  }
  Matrix m(n, n);
  for (size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (size_t j = i + 1; j < n; ++j) {
      const double c = std::clamp(
          Dot(emb[i].embedding, emb[j].embedding) / (norms[i] * norms[j]),
          -1.0, 1.0);
      m(i, j) = c;
      m(j, i) = c;
    }
  }
  return m;
}

}  // namespace

AffinityMatrix AffinityMatrix::FromRawCosine(Matrix data) {
  const size_t n = data.rows();
  if (n == 0 || data.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument, "affinity must be square");
  }
  for (size_t i = 0; i < n; ++i) {
    if (data(i, i) != 1.0) {
      throw Error(ErrorCode::kInvalidArgument, "raw cosine diagonal must be 1");
    }
    for (size_t j = 0; j < n; ++j) {
      const double v = data(i, j);
      if (!(v >= -1.0 && v <= 1.0) || v != data(j, i)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "raw cosine entries must be symmetric and in [-1, 1]");
      }
    }
  }
  return AffinityMatrix(std::move(data), AffinityState::kRawCosine, 0, 0.0);
}

AffinityMatrix AffinityMatrix::FromBinarized(Matrix data, int p) {
  const size_t n = data.rows();
  if (n == 0 || data.cols() != n) {
    throw Error(ErrorCode::kInvalidArgument, "affinity must be square");
  }
  for (size_t i = 0; i < n; ++i) {
    int ones = 0;
    for (double v : data.row(i)) {
      if (v != 0.0 && v != 1.0) {
        throw Error(ErrorCode::kInvalidArgument, "binarized entries must be 0/1");
      }
      ones += v == 1.0;
    }
    if (ones != p) {
      throw Error(ErrorCode::kInvalidArgument,
                  "row " + std::to_string(i) + " does not sum to p");
    }
  }
  return AffinityMatrix(std::move(data), AffinityState::kBinarized, p, 0.0);
}

double CosineSimilarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "vectors differ in dimension");
  }
  const double na = Norm(a);
  const double nb = Norm(b);
  if (!(na > 1e-12) || !(nb > 1e-12)) {
    throw Error(ErrorCode::kZeroNorm, "cosine similarity of a zero vector");
  }
  return std::clamp(Dot(a, b) / (na * nb), -1.0, 1.0);
}

AffinityMatrix CosineAffinity(const EmbeddingSequence& emb) {
  return AffinityMatrix(CosineMatrix(emb), AffinityState::kRawCosine, 0, 0.0);
}

double KernelWeight(double distance, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidSigma, "sigma must be a positive number");
  }
  return std::exp(-(distance * distance) / (sigma * sigma));
}

AffinityMatrix KernelAffinity(const EmbeddingSequence& emb, double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kInvalidSigma, "sigma must be a positive number");
  }
  Matrix m = CosineMatrix(emb);
  const size_t n = m.rows();
  for (size_t i = 0; i < n; ++i) {
    m(i, i) = 0.0;
    for (size_t j = i + 1; j < n; ++j) {
      const double chord = std::sqrt(std::max(0.0, 2.0 - 2.0 * m(i, j)));
      const double w = KernelWeight(chord, sigma);
      m(i, j) = w;
      m(j, i) = w;
    }
  }
  return AffinityMatrix(std::move(m), AffinityState::kKernelized, 0, sigma);
}

AffinityMatrix Binarize(const AffinityMatrix& raw, int p) {
  RequireState(raw, AffinityState::kRawCosine);
  const size_t n = raw.n();
  if (p < 1 || static_cast<size_t>(p) > n) {
    throw Error(ErrorCode::kInvalidP, "p = " + std::to_string(p) +
                                          " outside [1, " + std::to_string(n) +
                                          "]");
  }
  Matrix out(n, n);
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) {
    auto row = raw.data().row(i);
    // The self entry always takes the first slot, so duplicate vectors
    // elsewhere in the row cannot displace it.
    std::iota(order.begin(), order.end(), size_t{0});
    std::swap(order[0], order[i]);
    std::partial_sort(order.begin() + 1, order.begin() + p, order.end(),
                      [&](size_t a, size_t b) {
                        if (row[a] != row[b]) return row[a] > row[b];
                        return a < b;
                      });
    for (int j = 0; j < p; ++j) out(i, order[j]) = 1.0;
  }
  return AffinityMatrix(std::move(out), AffinityState::kBinarized, p, 0.0);
}

AffinityMatrix Symmetrize(const AffinityMatrix& binarized) {
  RequireState(binarized, AffinityState::kBinarized);
  const size_t n = binarized.n();
  Matrix out(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      out(i, j) = (binarized(i, j) + binarized(j, i)) / 2.0;
    }
  }
  return AffinityMatrix(std::move(out), AffinityState::kSymmetrized,
                        binarized.p(), 0.0);
}

}  // namespace nmesc
