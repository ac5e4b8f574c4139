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
#include <functional>
#include <set>

#include <gtest/gtest.h>

#include "nmesc/affinity.h"
#include "nmesc/error.h"
#include "nmesc/testbench.h"

namespace nmesc::testbench {
namespace {

TEST(GenerateTest, SingleClusterHasOneLabel) {
  SynthSpec spec;
  spec.n_clusters = 1;
  const SynthData data = Generate(spec);
  EXPECT_EQ(std::set<int>(data.truth.begin(), data.truth.end()), std::set<int>{0});
}

TEST(GenerateTest, NoNoiseGivesIdealBlocks) {
  SynthSpec spec;
  spec.n_clusters = 3;
  spec.noise = 0.0;
  const SynthData data = Generate(spec);
  const AffinityMatrix a = CosineAffinity(data.emb);
  for (size_t i = 0; i < data.emb.size(); ++i) {
    for (size_t j = 0; j < data.emb.size(); ++j) {
      if (data.truth[i] == data.truth[j]) {
        EXPECT_NEAR(a(i, j), 1.0, 1e-12);
      } else {
        EXPECT_LE(a(i, j), std::cos(60.0 * M_PI / 180.0) + 1e-12);
      }
    }
  }
}

TEST(GenerateTest, ShapeAndDeterminism) {
  SynthSpec spec;
  spec.n_clusters = 4;
  spec.min_per_cluster = 5;
  spec.max_per_cluster = 9;
  spec.dim = 12;
  spec.seed = 99;
  const SynthData a = Generate(spec);
  const SynthData b = Generate(spec);
  EXPECT_EQ(a.emb, b.emb);
  EXPECT_EQ(a.truth, b.truth);
  EXPECT_EQ(a.emb.dim(), 12u);
  EXPECT_GE(a.emb.size(), 20u);
  EXPECT_LE(a.emb.size(), 36u);
  for (size_t i = 0; i < a.emb.size(); ++i) {
    EXPECT_NEAR(a.emb[i].start, 1.5 * i, 1e-9);
    EXPECT_NEAR(a.emb[i].end - a.emb[i].start, 1.5, 1e-9);
  }
  spec.seed = 100;
  EXPECT_NE(Generate(spec).emb, a.emb);
}

TEST(GenerateTest, InfeasibleSeparation) {
  SynthSpec spec;
  spec.n_clusters = 20;
  spec.dim = 2;
  try {
    Generate(spec);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInfeasibleSpec);
  }
}

TEST(BestMapAccuracyTest, Cases) {
  const std::vector<int> truth{0, 1, 1, 1};
  EXPECT_EQ(BestMapAccuracy(truth, truth), 1.0);
  const std::vector<int> renamed{5, 2, 2, 2};
  EXPECT_EQ(BestMapAccuracy(renamed, truth), 1.0);
  const std::vector<int> pred{0, 0, 1, 1};
  EXPECT_EQ(BestMapAccuracy(pred, truth), 0.75);
  const std::vector<int> all_one{3, 3, 3, 3};
  EXPECT_EQ(BestMapAccuracy(all_one, truth), 0.75);
}

TEST(ConnectedComponentsTest, Cases) {
  EXPECT_EQ(ConnectedComponents(Matrix::Identity(5)), 5);
  EXPECT_EQ(ConnectedComponents(Matrix(4, 4, 1.0)), 1);
  EXPECT_EQ(ConnectedComponents(
                Matrix{{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}}),
            2);
  EXPECT_EQ(ConnectedComponents(Matrix{{1, 0, 0.5}, {0, 1, 0}, {0.5, 0, 1}}), 2);
}

TEST(CharPolyEigenvaluesTest, KnownSpectra) {
  const std::vector<double> path = CharPolyEigenvalues(Matrix{{1, -1}, {-1, 1}});
  EXPECT_NEAR(path[0], 0.0, 1e-12);
  EXPECT_NEAR(path[1], 2.0, 1e-12);
  const std::vector<double> diag = CharPolyEigenvalues(Matrix{{3, 0, 0}, {0, -1, 0}, {0, 0, 3}});
  EXPECT_NEAR(diag[0], -1.0, 1e-12);
  EXPECT_NEAR(diag[1], 3.0, 1e-12);
  EXPECT_NEAR(diag[2], 3.0, 1e-12);
}

TEST(ExhaustiveKMeansInertiaTest, SmallCase) {
  const Matrix pts{{0}, {1}, {10}, {11}};
  EXPECT_NEAR(ExhaustiveKMeansInertia(pts, 2), 1.0, 1e-12);
  EXPECT_NEAR(ExhaustiveKMeansInertia(pts, 4), 0.0, 1e-12);
}

TEST(BruteForceDerTest, HalfMismatchTicks) {
  const std::vector<RttmRecord> ref = {{"r", 0.0, 10.0, "A"}};
  const std::vector<RttmRecord> hyp = {{"r", 0.0, 5.0, "x"}, {"r", 5.0, 5.0, "y"}};
  const OracleDer o = BruteForceDer(ref, hyp, 0.0, false);
  EXPECT_EQ(o.scored, 20000);
  EXPECT_EQ(o.speaker_error, 10000);
  EXPECT_EQ(o.missed, 0);
  EXPECT_EQ(o.false_alarm, 0);
}

}  // namespace
}  // namespace nmesc::testbench
