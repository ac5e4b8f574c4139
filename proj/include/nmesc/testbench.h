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

#ifndef NMESC_TESTBENCH_H_
#define NMESC_TESTBENCH_H_

#include <cstdint>
#include <span>
#include <vector>

#include "nmesc/affinity.h"
#include "nmesc/diarization.h"
#include "nmesc/embedding.h"
#include "nmesc/numerics.h"

// Synthetic ground truth and brute-force oracles. Nothing here calls into the
// production code path it is used to check.
namespace nmesc::testbench {

struct SynthSpec {
  int n_clusters = 2;
  int min_per_cluster = 10;
  int max_per_cluster = 10;
  int dim = 16;
  // Scale applied to the unit centroid before noise is added; larger means
  // tighter bundles.
  double within_concentration = 1.0;
  // Per-coordinate standard deviation of the Gaussian perturbation.
  double noise = 0.1;
  uint64_t seed = 1;
  // Minimum pairwise angle between centroids, degrees.
  double min_separation_deg = 60.0;
  double segment_duration = 1.5;
  std::string recording_id = "synth";
};

struct SynthData {
  EmbeddingSequence emb;
  std::vector<int> truth;
};

// Unit centroids placed by rejection sampling with the minimum separation,
// members are normalize(concentration * centroid + noise * g), segment order
// shuffled, timestamps contiguous. Deterministic per seed.
SynthData Generate(const SynthSpec& spec);

DiarizationResult TruthResult(const SynthData& data);

// Max over injective label maps of the fraction of matching positions.
// Exhaustive when the smaller label set has at most 8 labels.
double BestMapAccuracy(std::span<const int> pred, std::span<const int> truth);

// Maximum total weight over injective maps from the smaller side of
// `weights` to the larger, by enumerating permutations.
int64_t ExhaustiveMaxMatching(const std::vector<std::vector<int64_t>>& weights);

// Components of the graph whose edges are the strictly positive off-diagonal
// entries, counted by breadth-first search.
int ConnectedComponents(const Matrix& adjacency);
int ConnectedComponents(const AffinityMatrix& affinity);

// Eigenvalues of a symmetric matrix by bisection on the sign-change count of
// the leading principal minors of M - x I.
std::vector<double> CharPolyEigenvalues(const Matrix& m, double tol = 1e-13);

// Minimum within-cluster sum of squares over all partitions of the rows into
// exactly k non-empty groups.
double ExhaustiveKMeansInertia(const Matrix& points, int k);

// DER components from sampling every 0.5 ms tick and trying every speaker
// bijection. Ticks within collar/2 of a change in any reference speaker's
// activity are not scored. Ignores recording ids. Returns tick totals.
struct OracleDer {
  int64_t scored = 0;
  int64_t missed = 0;
  int64_t false_alarm = 0;
  int64_t speaker_error = 0;
};
OracleDer BruteForceDer(const std::vector<RttmRecord>& ref,
                        const std::vector<RttmRecord>& hyp, double collar,
                        bool score_overlap);

}  // namespace nmesc::testbench

#endif  // NMESC_TESTBENCH_H_
