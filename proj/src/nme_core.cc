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

#include "nmesc/nme_core.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "nmesc/error.h"
#include "nmesc/parallel.h"

namespace nmesc {

SymMatrix UnnormalizedLaplacian(const SymMatrix& adjacency) {
  const size_t n = adjacency.n();
  Matrix l(n, n);
  for (size_t i = 0; i < n; ++i) {
    double degree = 0.0;
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      l(i, j) = -adjacency(i, j);
      degree += adjacency(i, j);
    }
    l(i, i) = degree;
  }
  return SymMatrix(l);
}

SymMatrix UnnormalizedLaplacian(const AffinityMatrix& symmetrized) {
  if (symmetrized.state() != AffinityState::kSymmetrized) {
    throw Error(ErrorCode::kWrongState,
                std::string("Laplacian needs a Symmetrized affinity, got ") +
                    AffinityStateName(symmetrized.state()));
  }
  return UnnormalizedLaplacian(SymMatrix(symmetrized.data()));
}

SymMatrix NormalizedLaplacian(const AffinityMatrix& kernelized) {
  if (kernelized.state() != AffinityState::kKernelized) {
    throw Error(ErrorCode::kWrongState,
                std::string("normalized Laplacian needs a Kernelized affinity, "
                            "got ") +
                    AffinityStateName(kernelized.state()));
  }
  const size_t n = kernelized.n();
  std::vector<double> inv_sqrt(n);
  for (size_t i = 0; i < n; ++i) {
    double d = 0.0;
    for (double v : kernelized.data().row(i)) d += v;
    if (!(d > 0.0)) {
      throw Error(ErrorCode::kIsolatedNode,
                  "segment " + std::to_string(i) + " has zero affinity mass");
    }
    inv_sqrt[i] = 1.0 / std::sqrt(d);
  }
  Matrix l(n, n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      l(i, j) = inv_sqrt[i] * kernelized(i, j) * inv_sqrt[j];
    }
  }
  return SymMatrix(l);
}

std::vector<double> EigengapVector(std::span<const double> ascending,
                                   int limit) {
  if (ascending.size() < 2) {
    throw Error(ErrorCode::kTooFewEigenvalues,
                "eigengaps need at least 2 eigenvalues");
  }
  if (limit < 1) {
    throw Error(ErrorCode::kInvalidArgument, "eigengap limit must be >= 1");
  }
  const size_t count =
      std::min(static_cast<size_t>(limit), ascending.size() - 1);
  std::vector<double> gaps(count);
  for (size_t i = 0; i < count; ++i) {
    gaps[i] = std::max(0.0, ascending[i + 1] - ascending[i]);
  }
  return gaps;
}

size_t ArgMax(std::span<const double> values) {
  size_t best = 0;
  for (size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

void ValidateConfig(const NmeConfig& cfg) {
  if (!(cfg.epsilon > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must be > 0");
  }
  if (cfg.p_max && *cfg.p_max < 1) {
    throw Error(ErrorCode::kInvalidP, "p_max must be >= 1");
  }
  if (cfg.max_speakers < 1) {
    throw Error(ErrorCode::kInvalidArgument, "max_speakers must be >= 1");
  }
  if (cfg.fixed_k && (*cfg.fixed_k < 1 || *cfg.fixed_k > cfg.max_speakers)) {
    throw Error(ErrorCode::kInvalidK,
                "fixed_k must lie in [1, max_speakers = " +
                    std::to_string(cfg.max_speakers) + "]");
  }
  if (cfg.kmeans_restarts < 1) {
    throw Error(ErrorCode::kInvalidArgument, "kmeans_restarts must be >= 1");
  }
}

int ResolvePMax(const NmeConfig& cfg, size_t n) {
  const int upper = static_cast<int>(n);
  const int p = cfg.p_max ? *cfg.p_max : static_cast<int>(n / 4);
  return std::clamp(p, 1, std::max(1, upper));
}

NmeEntry NmeFromSpectrum(std::span<const double> ascending, int p,
                         const NmeConfig& cfg) {
  NmeEntry entry;
  entry.p = p;
  entry.eigengaps = EigengapVector(ascending, cfg.max_speakers);
  const size_t best = ArgMax(entry.eigengaps);
  entry.gp = entry.eigengaps[best] / (ascending.back() + cfg.epsilon);
  entry.rp = p / std::max(entry.gp, cfg.epsilon);
  entry.k_at_p = static_cast<int>(best) + 1;
  return entry;
}

namespace {

SymMatrix LaplacianAtP(const AffinityMatrix& raw, int p) {
  return UnnormalizedLaplacian(Symmetrize(Binarize(raw, p)));
}

}  // namespace

NmeEvaluation NmeAt(const AffinityMatrix& raw, int p, const NmeConfig& cfg) {
  ValidateConfig(cfg);
  EigenSystem es = Eigh(LaplacianAtP(raw, p));
  NmeEntry entry = NmeFromSpectrum(es.values, p, cfg);
  return {std::move(entry), std::move(es)};
}

NmeScan ScanNme(const AffinityMatrix& raw, const NmeConfig& cfg) {
  ValidateConfig(cfg);
  if (raw.state() != AffinityState::kRawCosine) {
    throw Error(ErrorCode::kWrongState,
                std::string("scan needs a RawCosine affinity, got ") +
                    AffinityStateName(raw.state()));
  }
  const size_t n = raw.n();
  if (n < 4) {
    throw Error(ErrorCode::kInputTooSmall,
                "scan needs at least 4 segments, got " + std::to_string(n));
  }
  NmeScan scan;
  scan.p_max = ResolvePMax(cfg, n);
  scan.entries.resize(scan.p_max);
  ParallelFor(scan.entries.size(), cfg.threads, [&](size_t i) {
    const int p = static_cast<int>(i) + 1;
    scan.entries[i] = NmeFromSpectrum(Eigenvalues(LaplacianAtP(raw, p)), p, cfg);
  });

  size_t best = 0;
  for (size_t i = 1; i < scan.entries.size(); ++i) {
    if (scan.entries[i].rp < scan.entries[best].rp) best = i;
  }
  scan.p_hat = scan.entries[best].p;
  scan.k_hat = cfg.fixed_k ? *cfg.fixed_k
                           : std::min(scan.entries[best].k_at_p,
                                      cfg.max_speakers);
  return scan;
}

Matrix SpectralEmbedding(const EigenSystem& es, int k) {
  const size_t n = es.values.size();
  if (k < 1 || static_cast<size_t>(k) > n) {
    throw Error(ErrorCode::kInvalidK, "embedding dimension k = " +
                                          std::to_string(k) + " outside [1, " +
                                          std::to_string(n) + "]");
  }
  Matrix s(n, k);
  for (size_t i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) s(i, j) = es.vectors(i, j);
  }
  return s;
}

std::vector<int> LabelsAtP(const AffinityMatrix& raw, int p,
                           const NmeConfig& cfg) {
  NmeEvaluation eval = NmeAt(raw, p, cfg);
  const int k = cfg.fixed_k ? *cfg.fixed_k : eval.entry.k_at_p;
  const Matrix s = SpectralEmbedding(eval.eigensystem, k);
  KMeansConfig km;
  km.restarts = cfg.kmeans_restarts;
  km.seed = cfg.seed;
  return KMeans(s, k, km).labels;
}

NmeScResult NmeSc(const EmbeddingSequence& emb, const NmeConfig& cfg) {
  ValidateConfig(cfg);
  const AffinityMatrix raw = CosineAffinity(emb);
  NmeScResult out;
  out.scan = ScanNme(raw, cfg);
  out.labels = LabelsAtP(raw, out.scan.p_hat, cfg);
  out.result = MakeDiarizationResult(emb, out.labels);
  return out;
}

}  // namespace nmesc
