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

#ifndef NMESC_NME_CORE_H_
#define NMESC_NME_CORE_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nmesc/affinity.h"
#include "nmesc/embedding.h"
#include "nmesc/numerics.h"

namespace nmesc {

// L = D - A with D = diag(row sums of A). The diagonal of A cancels, so the
// degree is accumulated over off-diagonal entries only.
SymMatrix UnnormalizedLaplacian(const SymMatrix& adjacency);
// Requires a kSymmetrized affinity.
SymMatrix UnnormalizedLaplacian(const AffinityMatrix& symmetrized);

// D^(-1/2) A D^(-1/2) for a kKernelized affinity.
SymMatrix NormalizedLaplacian(const AffinityMatrix& kernelized);

// Consecutive differences of ascending eigenvalues, the first
// min(limit, N - 1) of them, negatives from round-off clamped to 0.
std::vector<double> EigengapVector(std::span<const double> ascending, int limit);

// Index of the first maximum.
size_t ArgMax(std::span<const double> values);

struct NmeConfig {
  double epsilon = 1e-10;
  // Upper end of the p search; unset means floor(N / 4), floored at 1.
  std::optional<int> p_max;
  int max_speakers = 8;
  // Known speaker count. p is still auto-tuned.
  std::optional<int> fixed_k;
  uint64_t seed = 42;
  int kmeans_restarts = 10;
  // Workers for the p scan; 0 means one per hardware thread. Results do not
  // depend on this value.
  int threads = 1;
};

void ValidateConfig(const NmeConfig& cfg);

// The p range actually scanned for an N-segment input: [1, P].
int ResolvePMax(const NmeConfig& cfg, size_t n);

struct NmeEntry {
  int p = 0;
  double gp = 0.0;
  double rp = 0.0;
  int k_at_p = 0;
  std::vector<double> eigengaps;

  bool operator==(const NmeEntry&) const = default;
};

struct NmeScan {
  std::vector<NmeEntry> entries;  // ascending p, one per p in [1, p_max]
  int p_hat = 0;
  int k_hat = 0;
  int p_max = 0;

  bool operator==(const NmeScan&) const = default;
};

// Eigengap statistics for one p given the Laplacian spectrum.
NmeEntry NmeFromSpectrum(std::span<const double> ascending, int p,
                         const NmeConfig& cfg);

struct NmeEvaluation {
  NmeEntry entry;
  EigenSystem eigensystem;
};

// binarize -> symmetrize -> Laplacian -> eigendecomposition -> NME for one p.
NmeEvaluation NmeAt(const AffinityMatrix& raw, int p, const NmeConfig& cfg);

// Evaluates every p in [1, P] and selects p_hat = argmin r(p), lowest p on
// ties, then k_hat from the eigengaps at p_hat (or cfg.fixed_k).
NmeScan ScanNme(const AffinityMatrix& raw, const NmeConfig& cfg);

// Rows of the eigenvectors for the k smallest eigenvalues, not renormalized.
Matrix SpectralEmbedding(const EigenSystem& es, int k);

// Cluster labels from the graph binarized at p, using k = cfg.fixed_k when
// set and the eigengap estimate at p otherwise.
std::vector<int> LabelsAtP(const AffinityMatrix& raw, int p,
                           const NmeConfig& cfg);

struct NmeScResult {
  DiarizationResult result;
  NmeScan scan;
  std::vector<int> labels;
};

// Auto-tuned spectral clustering end to end.
NmeScResult NmeSc(const EmbeddingSequence& emb, const NmeConfig& cfg);

struct NjwConfig {
  double sigma = 0.0;  // required, > 0
  std::optional<int> k;
  int max_speakers = 8;
  uint64_t seed = 42;
  int kmeans_restarts = 10;
};

struct NjwResult {
  DiarizationResult result;
  std::vector<int> labels;
  Matrix embedding;  // row-normalized spectral embedding fed to k-means
  int k = 0;
};

// Ng-Jordan-Weiss baseline: Gaussian kernel, normalized affinity, k largest
// eigenvectors with unit-norm rows, k-means. Without cfg.k the count comes
// from the largest gap in the descending spectrum.
NjwResult NjwSc(const EmbeddingSequence& emb, const NjwConfig& cfg);

}  // namespace nmesc

#endif  // NMESC_NME_CORE_H_
