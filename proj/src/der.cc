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
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "nmesc/diarization.h"
#include "nmesc/error.h"
#include "nmesc/parallel.h"

namespace nmesc {
namespace {

// Half-millisecond grid: RTTM times have millisecond resolution and the
// collar is split in two halves.
constexpr double kTicksPerSecond = 2000.0;

int64_t ToTicks(double seconds) {
  return std::llround(seconds * kTicksPerSecond);
}

double ToSeconds(int64_t ticks) { return ticks / kTicksPerSecond; }

struct Interval {
  int64_t begin;
  int64_t end;
};

struct Totals {
  int64_t scored = 0;
  int64_t missed = 0;
  int64_t false_alarm = 0;
  int64_t speaker_error = 0;
  std::vector<SpeakerMapping> mapping;

  void Add(const Totals& o) {
    scored += o.scored;
    missed += o.missed;
    false_alarm += o.false_alarm;
    speaker_error += o.speaker_error;
    mapping.insert(mapping.end(), o.mapping.begin(), o.mapping.end());
  }
};

// Speaker name -> merged, sorted intervals.
std::map<std::string, std::vector<Interval>> GroupBySpeaker(
    const std::vector<const RttmRecord*>& records) {
  std::map<std::string, std::vector<Interval>> out;
  for (const RttmRecord* r : records) {
    const int64_t b = ToTicks(r->onset);
    const int64_t e = ToTicks(r->onset + r->duration);
    if (e > b) out[r->speaker].push_back({b, e});
  }
  for (auto& [name, v] : out) {
    std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
      return std::tie(a.begin, a.end) < std::tie(b.begin, b.end);
    });
    std::vector<Interval> merged;
    for (const Interval& iv : v) {
      if (!merged.empty() && iv.begin <= merged.back().end) {
        merged.back().end = std::max(merged.back().end, iv.end);
      } else {
        merged.push_back(iv);
      }
    }
    v = std::move(merged);
  }
  return out;
}

struct Event {
  int64_t time;
  int kind;  // 0 = ref speaker, 1 = hyp speaker, 2 = collar zone
  int index;
  int delta;
};

Totals ScoreRecording(const std::string& recording_id,
                      const std::vector<const RttmRecord*>& ref_records,
                      const std::vector<const RttmRecord*>& hyp_records,
                      const DerOptions& options) {
  const auto ref = GroupBySpeaker(ref_records);
  const auto hyp = GroupBySpeaker(hyp_records);
  std::vector<std::string> ref_names;
  std::vector<std::string> hyp_names;
  std::vector<Event> events;

  const int64_t half_collar = ToTicks(options.collar) / 2;
  int idx = 0;
  for (const auto& [name, intervals] : ref) {
    ref_names.push_back(name);
    for (const Interval& iv : intervals) {
      events.push_back({iv.begin, 0, idx, +1});
      events.push_back({iv.end, 0, idx, -1});
      if (half_collar > 0) {
        for (int64_t b : {iv.begin, iv.end}) {
          events.push_back({b - half_collar, 2, 0, +1});
          events.push_back({b + half_collar, 2, 0, -1});
        }
      }
    }
    ++idx;
  }
  idx = 0;
  for (const auto& [name, intervals] : hyp) {
    hyp_names.push_back(name);
    for (const Interval& iv : intervals) {
      events.push_back({iv.begin, 1, idx, +1});
      events.push_back({iv.end, 1, idx, -1});
    }
    ++idx;
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.time < b.time;
  });

  const size_t nr = ref_names.size();
  const size_t nh = hyp_names.size();
  std::vector<int> ref_active(nr, 0);
  std::vector<int> hyp_active(nh, 0);
  int collar_depth = 0;
  std::vector<std::vector<int64_t>> overlap(nh, std::vector<int64_t>(nr, 0));
  int64_t matchable = 0;
  Totals t;

  for (size_t i = 0; i < events.size();) {
    const int64_t now = events[i].time;
    for (; i < events.size() && events[i].time == now; ++i) {
      const Event& ev = events[i];
      if (ev.kind == 0) ref_active[ev.index] += ev.delta;
      else if (ev.kind == 1) hyp_active[ev.index] += ev.delta;
      else collar_depth += ev.delta;
    }
    if (i == events.size()) break;
    const int64_t dt = events[i].time - now;
    if (dt == 0 || collar_depth > 0) continue;
    int64_t n_ref = 0;
    int64_t n_hyp = 0;
    for (int a : ref_active) n_ref += a > 0;
    for (int a : hyp_active) n_hyp += a > 0;
    if (!options.score_overlap && n_ref > 1) continue;
    t.scored += dt * n_ref;
    t.missed += dt * std::max<int64_t>(0, n_ref - n_hyp);
    t.false_alarm += dt * std::max<int64_t>(0, n_hyp - n_ref);
    matchable += dt * std::min(n_ref, n_hyp);
    for (size_t h = 0; h < nh; ++h) {
      if (hyp_active[h] <= 0) continue;
      for (size_t r = 0; r < nr; ++r) {
        if (ref_active[r] > 0) overlap[h][r] += dt;
      }
    }
  }

  int64_t correct = 0;
  if (nh > 0 && nr > 0) {
    const std::vector<int> assign = MaxWeightAssignment(overlap);
    for (size_t h = 0; h < nh; ++h) {
      if (assign[h] < 0) continue;
      correct += overlap[h][assign[h]];
      if (overlap[h][assign[h]] > 0) {
        t.mapping.push_back({recording_id, hyp_names[h], ref_names[assign[h]]});
      }
    }
  }
  t.speaker_error = matchable - correct;
  return t;
}

DerReport MakeReport(const Totals& t, const DerOptions& options) {
  if (t.scored <= 0) {
    throw Error(ErrorCode::kEmptyReference, "no scorable reference speech");
  }
  DerReport r;
  const double scored = static_cast<double>(t.scored);
  r.missed = t.missed / scored;
  r.false_alarm = t.false_alarm / scored;
  r.speaker_error = t.speaker_error / scored;
  r.der = (t.missed + t.false_alarm + t.speaker_error) / scored;
  r.scored_time = ToSeconds(t.scored);
  r.missed_time = ToSeconds(t.missed);
  r.false_alarm_time = ToSeconds(t.false_alarm);
  r.speaker_error_time = ToSeconds(t.speaker_error);
  r.collar = options.collar;
  r.mapping = t.mapping;
  return r;
}

Totals ScoreTotals(const std::vector<RttmRecord>& ref,
                   const std::vector<RttmRecord>& hyp,
                   const DerOptions& options) {
  if (!(options.collar >= 0.0) || !std::isfinite(options.collar)) {
    throw Error(ErrorCode::kInvalidArgument, "collar must be >= 0");
  }
  if (ref.empty()) {
    throw Error(ErrorCode::kEmptyReference, "reference has no records");
  }
  std::map<std::string, std::pair<std::vector<const RttmRecord*>,
                                  std::vector<const RttmRecord*>>>
      by_recording;
  for (const auto& r : ref) by_recording[r.recording_id].first.push_back(&r);
  for (const auto& h : hyp) {
    auto it = by_recording.find(h.recording_id);
    if (it != by_recording.end()) it->second.second.push_back(&h);
  }
  Totals total;
  for (const auto& [id, lists] : by_recording) {
    total.Add(ScoreRecording(id, lists.first, lists.second, options));
  }
  return total;
}

}  // namespace

std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<int64_t>>& weights) {
  const size_t rows = weights.size();
  const size_t cols = rows == 0 ? 0 : weights.front().size();
  const size_t n = std::max(rows, cols);
  if (n == 0) return {};
  auto cost = [&](size_t r, size_t c) -> int64_t {
    return (r < rows && c < cols) ? -weights[r][c] : 0;
  };

  // Shortest augmenting path formulation, 1-based with a sentinel column 0.
  constexpr int64_t kInf = std::numeric_limits<int64_t>::max() / 4;
  std::vector<int64_t> u(n + 1, 0), v(n + 1, 0);
  std::vector<size_t> match(n + 1, 0), way(n + 1, 0);
  for (size_t i = 1; i <= n; ++i) {
    match[0] = i;
    size_t j0 = 0;
    std::vector<int64_t> minv(n + 1, kInf);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const size_t i0 = match[j0];
      int64_t delta = kInf;
      size_t j1 = 0;
      for (size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const int64_t cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> out(rows, -1);
  for (size_t j = 1; j <= n; ++j) {
    const size_t r = match[j] - 1;
    if (r < rows && j - 1 < cols) out[r] = static_cast<int>(j - 1);
  }
  return out;
}

DerReport ScoreDer(const std::vector<RttmRecord>& ref,
                   const std::vector<RttmRecord>& hyp,
                   const DerOptions& options) {
  return MakeReport(ScoreTotals(ref, hyp, options), options);
}

DerReport EvaluateCorpus(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const DerOptions& options, int threads) {
  if (pairs.empty()) {
    throw Error(ErrorCode::kEmptyReference, "no recordings to evaluate");
  }
  std::vector<Totals> per_pair(pairs.size());
  ParallelFor(pairs.size(), threads, [&](size_t i) {
    const auto& [ref_path, hyp_path] = pairs[i];
    try {
      per_pair[i] = ScoreTotals(LoadRttm(ref_path), LoadRttm(hyp_path), options);
    } catch (const Error& e) {
      throw Error(e.code(), "while scoring " + ref_path + " vs " + hyp_path +
                                ": " + e.what());
    }
  });
  Totals total;
  for (const Totals& t : per_pair) total.Add(t);
  return MakeReport(total, options);
}

}  // namespace nmesc
