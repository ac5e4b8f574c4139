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

#ifndef NMESC_AFFINITY_H_
#define NMESC_AFFINITY_H_

#include <span>

#include "nmesc/embedding.h"
#include "nmesc/numerics.h"

namespace nmesc {

enum class AffinityState { kRawCosine, kKernelized, kBinarized, kSymmetrized };

const char* AffinityStateName(AffinityState state);

// N x N segment affinity tagged with how it was produced.
//   kRawCosine:   entries in [-1, 1], symmetric, unit diagonal.
//   kKernelized:  off-diagonal in (0, 1], zero diagonal.
//   kBinarized:   0/1 entries, every row sums to p.
//   kSymmetrized: entries in {0, 0.5, 1}, symmetric.
class AffinityMatrix {
 public:
  // Validating constructors for matrices built outside this module.
  static AffinityMatrix FromRawCosine(Matrix data);
  static AffinityMatrix FromBinarized(Matrix data, int p);

  AffinityState state() const { return state_; }
  // Binarization level for kBinarized / kSymmetrized, 0 otherwise.
  int p() const { return p_; }
  // Kernel scale for kKernelized, 0 otherwise.
  double sigma() const { return sigma_; }

  size_t n() const { return data_.rows(); }
  const Matrix& data() const { return data_; }
  double operator()(size_t r, size_t c) const { return data_(r, c); }

 private:
  friend AffinityMatrix CosineAffinity(const EmbeddingSequence&);
  friend AffinityMatrix KernelAffinity(const EmbeddingSequence&, double);
  friend AffinityMatrix Binarize(const AffinityMatrix&, int);
  friend AffinityMatrix Symmetrize(const AffinityMatrix&);

  AffinityMatrix(Matrix data, AffinityState state, int p, double sigma)
      : data_(std::move(data)), state_(state), p_(p), sigma_(sigma) {}

  Matrix data_;
  AffinityState state_;
  int p_ = 0;
  double sigma_ = 0.0;
};

// a.b / (|a| |b|), clamped to [-1, 1].
double CosineSimilarity(std::span<const double> a, std::span<const double> b);

AffinityMatrix CosineAffinity(const EmbeddingSequence& emb);

// exp(-d^2 / sigma^2).
double KernelWeight(double distance, double sigma);

// Gaussian kernel over the chord distance between unit-normalized embeddings,
// d = sqrt(2 - 2 cos), with a zero diagonal. Used by the NJW baseline.
AffinityMatrix KernelAffinity(const EmbeddingSequence& emb, double sigma);

// Row-wise p-neighbor binarization: each row keeps its diagonal plus its
// p - 1 largest off-diagonal entries as 1, the rest 0. Ties go to the lower
// column index. p = 1 therefore yields the identity.
AffinityMatrix Binarize(const AffinityMatrix& raw, int p);

// (A + A^T) / 2 of a binarized matrix.
AffinityMatrix Symmetrize(const AffinityMatrix& binarized);

}  // namespace nmesc

#endif  // NMESC_AFFINITY_H_
