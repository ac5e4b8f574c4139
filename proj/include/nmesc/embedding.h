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

#ifndef NMESC_EMBEDDING_H_
#define NMESC_EMBEDDING_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace nmesc {

struct Segment {
  double start = 0.0;
  double end = 0.0;
  std::vector<double> embedding;

  bool operator==(const Segment&) const = default;
};

// Time-ordered speech segments with one speaker embedding each.
//
// Invariants: at least two segments, end > start, every embedding has the
// same dimension D >= 1, finite components and norm > 1e-12. Segments are
// stably sorted by start time on construction.
class EmbeddingSequence {
 public:
  static EmbeddingSequence Create(std::string recording_id,
                                  std::vector<Segment> segments);

  const std::string& recording_id() const { return recording_id_; }
  size_t size() const { return segments_.size(); }
  size_t dim() const { return dim_; }
  const std::vector<Segment>& segments() const { return segments_; }
  const Segment& operator[](size_t i) const { return segments_[i]; }

  bool operator==(const EmbeddingSequence&) const = default;

 private:
  EmbeddingSequence() = default;

  std::string recording_id_;
  std::vector<Segment> segments_;
  size_t dim_ = 0;
};

struct LabeledSegment {
  double start = 0.0;
  double end = 0.0;
  int label = 0;

  bool operator==(const LabeledSegment&) const = default;
};

struct DiarizationResult {
  std::string recording_id;
  std::vector<LabeledSegment> segments;

  int num_speakers() const;
};

// Joins per-segment cluster labels with segment times. Labels are renumbered
// in order of first appearance so the output range is [0, k).
DiarizationResult MakeDiarizationResult(const EmbeddingSequence& emb,
                                        std::span<const int> labels);

}  // namespace nmesc

#endif  // NMESC_EMBEDDING_H_
