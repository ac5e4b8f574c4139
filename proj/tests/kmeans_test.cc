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

#include <cmath>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include "nmesc/error.h"
#include "nmesc/numerics.h"
#include "nmesc/testbench.h"

namespace nmesc {
namespace {

Matrix RandomPoints(size_t n, size_t d, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  Matrix m(n, d);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < d; ++j) m(i, j) = u(rng);
  }
  return m;
}

TEST(KMeansTest, SeparatedPairs) {
  const Matrix pts{{0, 0}, {0.1, 0}, {10, 10}, {10.1, 10}};
  const KMeansResult r = KMeans(pts, 2, {});
  EXPECT_EQ(r.labels[0], r.labels[1]);
  EXPECT_EQ(r.labels[2], r.labels[3]);
  EXPECT_NE(r.labels[0], r.labels[2]);
  EXPECT_NEAR(r.inertia, 0.01, 1e-12);
}

TEST(KMeansTest, KEqualsNGivesZeroInertia) {
  std::mt19937_64 rng(2);
  const Matrix pts = RandomPoints(9, 3, rng);
  const KMeansResult r = KMeans(pts, 9, {});
  EXPECT_EQ(r.inertia, 0.0);
  EXPECT_EQ(std::set<int>(r.labels.begin(), r.labels.end()).size(), 9u);
}

TEST(KMeansTest, DuplicatePointsStillFillEveryCluster) {
  const Matrix pts{{1, 1}, {1, 1}, {1, 1}, {2, 2}};
  const KMeansResult r = KMeans(pts, 3, {});
  EXPECT_EQ(std::set<int>(r.labels.begin(), r.labels.end()).size(), 3u);
  EXPECT_EQ(r.inertia, 0.0);
}

TEST(KMeansTest, InvalidK) {
  const Matrix pts{{0, 0}, {1, 1}};
  for (int k : {0, 3}) {
    try {
      KMeans(pts, k, {});
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kInvalidK);
    }
  }
}

TEST(KMeansTest, MatchesExhaustivePartitionOptimum) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix pts = RandomPoints(8, 2, rng);
    const double optimum = testbench::ExhaustiveKMeansInertia(pts, 3);
    KMeansConfig cfg;
    cfg.restarts = 20;
    cfg.seed = 100 + trial;
    EXPECT_NEAR(KMeans(pts, 3, cfg).inertia, optimum, 1e-9 * (1 + optimum));
  }
}

TEST(KMeansTest, InertiaNonIncreasingAcrossIterations) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix pts = RandomPoints(60, 3, rng);
    KMeansConfig cfg;
    cfg.restarts = 1;
    cfg.seed = trial;
    const KMeansResult r = KMeans(pts, 5, cfg);
    ASSERT_FALSE(r.inertia_history.empty());
    for (size_t i = 1; i < r.inertia_history.size(); ++i) {
      EXPECT_LE(r.inertia_history[i], r.inertia_history[i - 1] * (1 + 1e-12));
    }
    EXPECT_EQ(r.inertia, r.inertia_history.back());
  }
}

TEST(KMeansTest, ReportedInertiaIsMinOverRestarts) {
  std::mt19937_64 rng(12);
  const Matrix pts = RandomPoints(40, 2, rng);
  KMeansConfig cfg;
  cfg.restarts = 7;
  cfg.seed = 9;
  const KMeansResult best = KMeans(pts, 4, cfg);
  double min_single = INFINITY;
  for (int r = 0; r < cfg.restarts; ++r) {
    KMeansConfig one;
    one.restarts = 1;
    one.seed = cfg.seed + r;
    min_single = std::min(min_single, KMeans(pts, 4, one).inertia);
  }
  EXPECT_EQ(best.inertia, min_single);
}

TEST(KMeansTest, LabelsAreNearestCentroid) {
  std::mt19937_64 rng(21);
  const Matrix pts = RandomPoints(50, 4, rng);
  const KMeansResult r = KMeans(pts, 6, {});
  for (size_t i = 0; i < pts.rows(); ++i) {
    const double own = SquaredDistance(pts.row(i), r.centroids.row(r.labels[i]));
    for (size_t c = 0; c < r.centroids.rows(); ++c) {
      EXPECT_LE(own, SquaredDistance(pts.row(i), r.centroids.row(c)) + 1e-12);
    }
  }
}

TEST(KMeansTest, DeterministicAndTranslationInvariant) {
  std::mt19937_64 rng(33);
  const Matrix pts = RandomPoints(45, 3, rng);
  const KMeansResult a = KMeans(pts, 4, {});
  const KMeansResult b = KMeans(pts, 4, {});
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centroids, b.centroids);

  Matrix shifted = pts;
  for (size_t i = 0; i < shifted.rows(); ++i) {
    shifted(i, 0) += 3.0;
    shifted(i, 1) -= 1.25;
    shifted(i, 2) += 0.5;
  }
  EXPECT_EQ(KMeans(shifted, 4, {}).labels, a.labels);
}

}  // namespace
}  // namespace nmesc
