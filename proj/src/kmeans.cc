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
#include <limits>
#include <random>
#include <string>

#include "nmesc/error.h"
#include "nmesc/numerics.h"

namespace nmesc {
namespace {

Matrix SeedPlusPlus(const Matrix& points, int k, std::mt19937_64& rng) {
  const size_t n = points.rows();
  Matrix centroids(k, points.cols());
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<bool> chosen(n, false);

  size_t pick = std::uniform_int_distribution<size_t>(0, n - 1)(rng);
  for (int c = 0; c < k; ++c) {
    if (c > 0) {
      double total = 0.0;
      for (size_t i = 0; i < n; ++i) total += nearest[i];
      if (total > 0.0) {
        const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
        double acc = 0.0;
        pick = n;
        for (size_t i = 0; i < n; ++i) {
          if (nearest[i] <= 0.0) continue;
          acc += nearest[i];
          pick = i;
          if (acc > u) break;
        }
      } else {
        // Every remaining point coincides with a centroid.
        std::vector<size_t> free;
        for (size_t i = 0; i < n; ++i) {
          if (!chosen[i]) free.push_back(i);
        }
        pick = free[std::uniform_int_distribution<size_t>(0, free.size() - 1)(
            rng)];
      }
    }
    chosen[pick] = true;
    auto dst = centroids.row(c);
    auto src = points.row(pick);
    std::copy(src.begin(), src.end(), dst.begin());
    for (size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], SquaredDistance(points.row(i), dst));
    }
  }
  return centroids;
}

int Nearest(std::span<const double> x, const Matrix& centroids, double* dist) {
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t c = 0; c < centroids.rows(); ++c) {
    const double d = SquaredDistance(x, centroids.row(c));
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  if (dist != nullptr) *dist = best_d;
  return best;
}

KMeansResult RunLloyd(const Matrix& points, int k, int max_iterations,
                      std::mt19937_64& rng) {
  const size_t n = points.rows();
  const size_t dim = points.cols();
  KMeansResult res;
  res.centroids = SeedPlusPlus(points, k, rng);
  res.labels.assign(n, -1);
  std::vector<double> dist(n);

  for (int iter = 1; iter <= max_iterations; ++iter) {
    res.iterations = iter;
    bool changed = false;
    for (size_t i = 0; i < n; ++i) {
      const int c = Nearest(points.row(i), res.centroids, &dist[i]);
      if (c != res.labels[i]) {
        res.labels[i] = c;
        changed = true;
      }
    }

    // Empty clusters take the worst-fit point of a cluster that can spare one.
    std::vector<int> counts(k, 0);
    for (int l : res.labels) ++counts[l];
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      size_t worst = n;
      for (size_t i = 0; i < n; ++i) {
        if (counts[res.labels[i]] < 2) continue;
        if (worst == n || dist[i] > dist[worst]) worst = i;
      }
      --counts[res.labels[worst]];
      res.labels[worst] = c;
      counts[c] = 1;
      dist[worst] = 0.0;
      auto src = points.row(worst);
      std::copy(src.begin(), src.end(), res.centroids.row(c).begin());
      changed = true;
    }

    if (!changed) break;

    Matrix sums(k, dim);
    for (size_t i = 0; i < n; ++i) {
      auto s = sums.row(res.labels[i]);
      auto x = points.row(i);
      for (size_t j = 0; j < dim; ++j) s[j] += x[j];
    }
    for (int c = 0; c < k; ++c) {
      auto s = sums.row(c);
      auto out = res.centroids.row(c);
      for (size_t j = 0; j < dim; ++j) out[j] = s[j] / counts[c];
    }

    double inertia = 0.0;
    for (size_t i = 0; i < n; ++i) {
      inertia += SquaredDistance(points.row(i), res.centroids.row(res.labels[i]));
    }
    res.inertia = inertia;
    res.inertia_history.push_back(inertia);
  }
  return res;
}

}  // namespace

KMeansResult KMeans(const Matrix& points, int k, const KMeansConfig& config) {
  const size_t n = points.rows();
  if (k < 1 || static_cast<size_t>(k) > n) {
    throw Error(ErrorCode::kInvalidK, "k = " + std::to_string(k) +
                                          " outside [1, " + std::to_string(n) +
                                          "]");
  }
  for (double v : points.data()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFinite, "k-means input has a NaN or Inf");
    }
  }
  if (config.restarts < 1 || config.max_iterations < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "restarts and max_iterations must be positive");
  }

  KMeansResult best;
  for (int r = 0; r < config.restarts; ++r) {
    std::mt19937_64 rng(config.seed + static_cast<uint64_t>(r));
    KMeansResult run = RunLloyd(points, k, config.max_iterations, rng);
    if (r == 0 || run.inertia < best.inertia) best = std::move(run);
  }
  return best;
}

}  // namespace nmesc
