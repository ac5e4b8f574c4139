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
#include <string>

#include "nmesc/error.h"
#include "nmesc/nme_core.h"

namespace nmesc {

NjwResult NjwSc(const EmbeddingSequence& emb, const NjwConfig& cfg) {
  if (!(cfg.sigma > 0.0)) {
    throw Error(ErrorCode::kInvalidSigma, "NJW needs sigma > 0");
  }
  if (cfg.max_speakers < 1 || cfg.kmeans_restarts < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_speakers and kmeans_restarts must be >= 1");
  }
  const size_t n = emb.size();
  if (n < 4) {
    throw Error(ErrorCode::kInputTooSmall,
                "NJW needs at least 4 segments, got " + std::to_string(n));
  }
  if (cfg.k && (*cfg.k < 1 || static_cast<size_t>(*cfg.k) > n)) {
    throw Error(ErrorCode::kInvalidK, "k outside [1, N]");
  }

  const EigenSystem es = Eigh(NormalizedLaplacian(KernelAffinity(emb, cfg.sigma)));

  // Descending spectrum; gaps after each of the first max_speakers values.
  std::vector<double> descending(es.values.rbegin(), es.values.rend());
  const size_t window =
      std::min(static_cast<size_t>(cfg.max_speakers), n - 1);
  std::vector<double> gaps(window);
  for (size_t i = 0; i < window; ++i) {
    gaps[i] = std::max(0.0, descending[i] - descending[i + 1]);
  }

  NjwResult out;
  out.k = cfg.k ? *cfg.k : static_cast<int>(ArgMax(gaps)) + 1;
  out.embedding = Matrix(n, out.k);
  for (size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    for (int j = 0; j < out.k; ++j) {
      const double v = es.vectors(i, n - 1 - j);
      out.embedding(i, j) = v;
      norm2 += v * v;
    }
    const double norm = std::sqrt(norm2);
    if (norm > 0.0) {
      for (int j = 0; j < out.k; ++j) out.embedding(i, j) /= norm;
    }
  }

  KMeansConfig km;
  km.restarts = cfg.kmeans_restarts;
  km.seed = cfg.seed;
  out.labels = KMeans(out.embedding, out.k, km).labels;
  out.result = MakeDiarizationResult(emb, out.labels);
  return out;
}

}  // namespace nmesc
