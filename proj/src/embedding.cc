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

#include "nmesc/embedding.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "nmesc/error.h"

namespace nmesc {

EmbeddingSequence EmbeddingSequence::Create(std::string recording_id,
                                            std::vector<Segment> segments) {
  if (segments.size() < 2) {
    throw Error(ErrorCode::kInputTooSmall,
                "need at least 2 segments, got " +
                    std::to_string(segments.size()));
  }
  const size_t dim = segments.front().embedding.size();
  if (dim == 0) {
    throw Error(ErrorCode::kDimensionMismatch, "embedding dimension is 0");
  }
  for (size_t i = 0; i < segments.size(); ++i) {
    const Segment& s = segments[i];
    if (s.embedding.size() != dim) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "segment " + std::to_string(i) + " has dimension " +
                      std::to_string(s.embedding.size()) + ", expected " +
                      std::to_string(dim));
    }
    if (!std::isfinite(s.start) || !std::isfinite(s.end) || !(s.end > s.start)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "segment " + std::to_string(i) + " needs end > start");
    }
    double norm2 = 0.0;
    for (double v : s.embedding) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kNonFinite,
                    "segment " + std::to_string(i) + " has a non-finite value");
      }
      norm2 += v * v;
    }
    if (!(std::sqrt(norm2) > 1e-12)) {
      throw Error(ErrorCode::kZeroNorm,
                  "segment " + std::to_string(i) + " has a zero-norm embedding");
    }
  }
  std::stable_sort(segments.begin(), segments.end(),
                   [](const Segment& a, const Segment& b) {
                     return a.start < b.start;
                   });
  EmbeddingSequence seq;
  seq.recording_id_ = std::move(recording_id);
  seq.segments_ = std::move(segments);
  seq.dim_ = dim;
  return seq;
}

int DiarizationResult::num_speakers() const {
  int k = 0;
  for (const auto& s : segments) k = std::max(k, s.label + 1);
  return k;
}

DiarizationResult MakeDiarizationResult(const EmbeddingSequence& emb,
                                        std::span<const int> labels) {
  if (labels.size() != emb.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "label count " + std::to_string(labels.size()) +
                    " != segment count " + std::to_string(emb.size()));
  }
  DiarizationResult out;
  out.recording_id = emb.recording_id();
  std::map<int, int> renumber;
  for (size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] =
        renumber.emplace(labels[i], static_cast<int>(renumber.size()));
    out.segments.push_back({emb[i].start, emb[i].end, it->second});
  }
  return out;
}

}  // namespace nmesc
