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

#include "nmesc/testbench.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "nmesc/error.h"

namespace nmesc::testbench {
namespace {

constexpr int kCentroidAttempts = 2000;
constexpr int kPlacementRestarts = 50;

std::vector<double> RandomUnit(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (;;) {
    std::vector<double> v(dim);
    double n2 = 0.0;
    for (double& x : v) {
      x = gauss(rng);
      n2 += x * x;
    }
    if (n2 < 1e-20) continue;
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : v) x *= inv;
    return v;
  }
}

double Dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<std::vector<double>> PlaceCentroids(const SynthSpec& spec,
                                                std::mt19937_64& rng) {
  const double max_cos = std::cos(spec.min_separation_deg * std::numbers::pi / 180.0);
  for (int restart = 0; restart < kPlacementRestarts; ++restart) {
    std::vector<std::vector<double>> centroids;
    bool failed = false;
    while (static_cast<int>(centroids.size()) < spec.n_clusters && !failed) {
      failed = true;
      for (int attempt = 0; attempt < kCentroidAttempts; ++attempt) {
        std::vector<double> c = RandomUnit(spec.dim, rng);
        bool ok = true;
        for (const auto& other : centroids) {
          if (Dot(c, other) > max_cos) {
            ok = false;
            break;
          }
        }
        if (ok) {
          centroids.push_back(std::move(c));
          failed = false;
          break;
        }
      }
    }
    if (!failed) return centroids;
  }
  throw Error(ErrorCode::kInfeasibleSpec,
              "cannot place " + std::to_string(spec.n_clusters) +
                  " centroids " + std::to_string(spec.min_separation_deg) +
                  " degrees apart in " + std::to_string(spec.dim) +
                  " dimensions");
}

// Injective map from the smaller side onto the larger, by depth-first search.
int64_t EnumerateMatchings(const std::vector<std::vector<int64_t>>& w,
                           bool transpose) {
  const size_t rows = transpose ? w.front().size() : w.size();
  const size_t cols = transpose ? w.size() : w.front().size();
  auto at = [&](size_t r, size_t c) { return transpose ? w[c][r] : w[r][c]; };
  std::vector<bool> taken(cols, false);
  int64_t best = std::numeric_limits<int64_t>::min();
  std::function<void(size_t, int64_t)> dfs = [&](size_t r, int64_t acc) {
    if (r == rows) {
      best = std::max(best, acc);
      return;
    }
    for (size_t c = 0; c < cols; ++c) {
      if (taken[c]) continue;
      taken[c] = true;
      dfs(r + 1, acc + at(r, c));
      taken[c] = false;
    }
  };
  dfs(0, 0);
  return best;
}

}  // namespace

SynthData Generate(const SynthSpec& spec) {
  if (spec.n_clusters < 1 || spec.dim < 2 || spec.min_per_cluster < 1 ||
      spec.max_per_cluster < spec.min_per_cluster || spec.noise < 0.0 ||
      !(spec.within_concentration > 0.0) || !(spec.segment_duration > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid synthetic spec");
  }
  if (spec.dim == 2) {
    const int max_on_circle =
        static_cast<int>(std::floor(360.0 / spec.min_separation_deg + 1e-9));
    if (spec.n_clusters > max_on_circle) {
      throw Error(ErrorCode::kInfeasibleSpec,
                  "at most " + std::to_string(max_on_circle) +
                      " centroids fit on the circle at this separation");
    }
  }
  std::mt19937_64 rng(spec.seed);
  const auto centroids = PlaceCentroids(spec, rng);

  std::vector<int> labels;
  std::uniform_int_distribution<int> count_dist(spec.min_per_cluster,
                                                spec.max_per_cluster);
  for (int c = 0; c < spec.n_clusters; ++c) {
    const int count = count_dist(rng);
    labels.insert(labels.end(), count, c);
  }
  std::shuffle(labels.begin(), labels.end(), rng);

  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Segment> segments;
  segments.reserve(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    const auto& centroid = centroids[labels[i]];
    std::vector<double> v(spec.dim);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (int j = 0; j < spec.dim; ++j) {
        v[j] = spec.within_concentration * centroid[j] + spec.noise * gauss(rng);
        n2 += v[j] * v[j];
      }
    } while (n2 < 1e-20);
    const double inv = 1.0 / std::sqrt(n2);
    for (double& x : v) x *= inv;
    const double start = static_cast<double>(i) * spec.segment_duration;
    segments.push_back({start, start + spec.segment_duration, std::move(v)});
  }
  return {EmbeddingSequence::Create(spec.recording_id, std::move(segments)),
          std::move(labels)};
}

DiarizationResult TruthResult(const SynthData& data) {
  DiarizationResult r;
  r.recording_id = data.emb.recording_id();
  for (size_t i = 0; i < data.truth.size(); ++i) {
    r.segments.push_back({data.emb[i].start, data.emb[i].end, data.truth[i]});
  }
  return r;
}

int64_t ExhaustiveMaxMatching(const std::vector<std::vector<int64_t>>& weights) {
  if (weights.empty() || weights.front().empty()) return 0;
  return EnumerateMatchings(weights, weights.size() > weights.front().size());
}

double BestMapAccuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "prediction and truth lengths differ");
  }
  if (pred.empty()) return 1.0;
  std::map<int, size_t> pred_ids;
  std::map<int, size_t> truth_ids;
  for (int v : pred) pred_ids.emplace(v, pred_ids.size());
  for (int v : truth) truth_ids.emplace(v, truth_ids.size());
  std::vector<std::vector<int64_t>> counts(
      pred_ids.size(), std::vector<int64_t>(truth_ids.size(), 0));
  for (size_t i = 0; i < pred.size(); ++i) {
    ++counts[pred_ids[pred[i]]][truth_ids[truth[i]]];
  }
  int64_t matched = 0;
  if (std::max(pred_ids.size(), truth_ids.size()) <= 8) {
    matched = ExhaustiveMaxMatching(counts);
  } else {
    // Too many labels to enumerate; fall back to the assignment solver.
    const std::vector<int> assign = MaxWeightAssignment(counts);
    for (size_t r = 0; r < assign.size(); ++r) {
      if (assign[r] >= 0) matched += counts[r][assign[r]];
    }
  }
  return static_cast<double>(matched) / static_cast<double>(pred.size());
}

int ConnectedComponents(const Matrix& adjacency) {
  const size_t n = adjacency.rows();
  std::vector<bool> seen(n, false);
  int components = 0;
  for (size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    ++components;
    std::deque<size_t> queue{s};
    seen[s] = true;
    while (!queue.empty()) {
      const size_t u = queue.front();
      queue.pop_front();
      for (size_t v = 0; v < n; ++v) {
        if (!seen[v] && v != u &&
            (adjacency(u, v) > 0.0 || adjacency(v, u) > 0.0)) {
          seen[v] = true;
          queue.push_back(v);
        }
      }
    }
  }
  return components;
}

int ConnectedComponents(const AffinityMatrix& affinity) {
  return ConnectedComponents(affinity.data());
}

std::vector<double> CharPolyEigenvalues(const Matrix& m, double tol) {
  const size_t n = m.rows();
  double radius = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double r = 0.0;
    for (size_t j = 0; j < n; ++j) r += std::abs(m(i, j));
    radius = std::max(radius, r);
  }
  const double tiny = std::numeric_limits<double>::min() * 1e10;

  // Number of eigenvalues below x: sign changes in the sequence of leading
  // principal minors of M - xI, each minor ratio being an elimination pivot.
  auto count_below = [&](double x) {
    std::vector<double> a(m.data().begin(), m.data().end());
    for (size_t i = 0; i < n; ++i) a[i * n + i] -= x;
    int negatives = 0;
    for (size_t k = 0; k < n; ++k) {
      double pivot = a[k * n + k];
      if (pivot == 0.0) pivot = tiny;
      if (pivot < 0.0) ++negatives;
      for (size_t i = k + 1; i < n; ++i) {
        const double f = a[i * n + k] / pivot;
        for (size_t j = k; j < n; ++j) a[i * n + j] -= f * a[k * n + j];
      }
    }
    return negatives;
  };

  const double scale = std::max(1.0, radius);
  std::vector<double> values(n);
  for (size_t k = 0; k < n; ++k) {
    double lo = -radius - 1.0;
    double hi = radius + 1.0;
    while (hi - lo > tol * scale) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (count_below(mid) > static_cast<int>(k)) hi = mid;
      else lo = mid;
    }
    values[k] = 0.5 * (lo + hi);
  }
  return values;
}

double ExhaustiveKMeansInertia(const Matrix& points, int k) {
  const size_t n = points.rows();
  const size_t d = points.cols();
  std::vector<int> label(n, 0);
  double best = std::numeric_limits<double>::infinity();
  std::function<void(size_t, int)> rec = [&](size_t i, int used) {
    if (i == n) {
      if (used != k) return;
      Matrix means(k, d);
      std::vector<int> counts(k, 0);
      for (size_t p = 0; p < n; ++p) {
        ++counts[label[p]];
        for (size_t j = 0; j < d; ++j) means(label[p], j) += points(p, j);
      }
      for (int c = 0; c < k; ++c) {
        for (size_t j = 0; j < d; ++j) means(c, j) /= counts[c];
      }
      double sse = 0.0;
      for (size_t p = 0; p < n; ++p) {
        for (size_t j = 0; j < d; ++j) {
          const double diff = points(p, j) - means(label[p], j);
          sse += diff * diff;
        }
      }
      best = std::min(best, sse);
      return;
    }
    if (static_cast<int>(n - i) < k - used) return;
    for (int c = 0; c < std::min(used + 1, k); ++c) {
      label[i] = c;
      rec(i + 1, std::max(used, c + 1));
    }
  };
  rec(0, 0);
  return best;
}

OracleDer BruteForceDer(const std::vector<RttmRecord>& ref,
                        const std::vector<RttmRecord>& hyp, double collar,
                        bool score_overlap) {
  auto ticks = [](double s) -> int64_t { return std::llround(s * 2000.0); };
  const int64_t half = ticks(collar) / 2;

  std::map<std::string, size_t> ref_ids;
  std::map<std::string, size_t> hyp_ids;
  for (const auto& r : ref) ref_ids.emplace(r.speaker, ref_ids.size());
  for (const auto& h : hyp) hyp_ids.emplace(h.speaker, hyp_ids.size());

  int64_t lo = std::numeric_limits<int64_t>::max();
  int64_t hi = std::numeric_limits<int64_t>::min();
  for (const auto* list : {&ref, &hyp}) {
    for (const auto& r : *list) {
      lo = std::min(lo, ticks(r.onset) - half);
      hi = std::max(hi, ticks(r.onset + r.duration) + half);
    }
  }
  const size_t span = static_cast<size_t>(hi - lo);
  auto paint = [&](const std::vector<RttmRecord>& recs,
                   std::map<std::string, size_t>& ids) {
    std::vector<std::vector<char>> on(ids.size(), std::vector<char>(span, 0));
    for (const auto& r : recs) {
      for (int64_t t = ticks(r.onset); t < ticks(r.onset + r.duration); ++t) {
        on[ids[r.speaker]][t - lo] = 1;
      }
    }
    return on;
  };
  const auto ref_on = paint(ref, ref_ids);
  const auto hyp_on = paint(hyp, hyp_ids);
  // A boundary is any tick where some reference speaker's activity flips.
  std::vector<char> excluded(span, 0);
  if (half > 0) {
    for (const auto& track : ref_on) {
      for (size_t b = 0; b <= span; ++b) {
        const char before = b == 0 ? 0 : track[b - 1];
        const char after = b == span ? 0 : track[b];
        if (before == after) continue;
        const size_t from = b - static_cast<size_t>(half);
        const size_t to = std::min(span, b + static_cast<size_t>(half));
        for (size_t t = from; t < to; ++t) excluded[t] = 1;
      }
    }
  }

  OracleDer out;
  int64_t matchable = 0;
  std::vector<std::vector<int64_t>> co(hyp_ids.size(),
                                       std::vector<int64_t>(ref_ids.size(), 0));
  for (size_t t = 0; t < span; ++t) {
    if (excluded[t]) continue;
    int64_t nr = 0;
    int64_t nh = 0;
    for (const auto& v : ref_on) nr += v[t];
    for (const auto& v : hyp_on) nh += v[t];
    if (!score_overlap && nr > 1) continue;
    out.scored += nr;
    out.missed += std::max<int64_t>(0, nr - nh);
    out.false_alarm += std::max<int64_t>(0, nh - nr);
    matchable += std::min(nr, nh);
    for (size_t h = 0; h < hyp_on.size(); ++h) {
      if (!hyp_on[h][t]) continue;
      for (size_t r = 0; r < ref_on.size(); ++r) co[h][r] += ref_on[r][t];
    }
  }
  out.speaker_error =
      matchable - (co.empty() || ref_ids.empty() ? 0 : ExhaustiveMaxMatching(co));
  return out;
}

}  // namespace nmesc::testbench
