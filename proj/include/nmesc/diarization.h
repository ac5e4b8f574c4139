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

#ifndef NMESC_DIARIZATION_H_
#define NMESC_DIARIZATION_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "nmesc/embedding.h"
#include "nmesc/nme_core.h"

namespace nmesc {

// ---- Embedding ingestion -------------------------------------------------
//
// JSON Lines, one segment per line:
//   {"start": <sec>, "end": <sec>, "embedding": [<D numbers>]}
// with an optional first line {"recording_id": "<id>", "dim": <D>}. Without a
// header the recording id is `default_recording_id`.

EmbeddingSequence ParseEmbeddings(std::istream& in,
                                  const std::string& source_name,
                                  const std::string& default_recording_id);
// The default recording id is the file name without directory and extension.
EmbeddingSequence LoadEmbeddings(const std::string& path);
void WriteEmbeddings(const EmbeddingSequence& emb, std::ostream& out);

// ---- RTTM -----------------------------------------------------------------

struct RttmRecord {
  std::string recording_id;
  double onset = 0.0;
  double duration = 0.0;
  std::string speaker;

  bool operator==(const RttmRecord&) const = default;
};

// Result segments as RTTM records, speakers named spk<label>. Consecutive
// segments with the same label are merged when the gap between them is
// below 1e-6 s.
std::vector<RttmRecord> ToRttmRecords(const DiarizationResult& result);

// "SPEAKER <rec> 1 <onset %.3f> <duration %.3f> <NA> <NA> <spk> <NA> <NA>"
std::string FormatRttmLine(const RttmRecord& record);
void WriteRttm(const DiarizationResult& result, std::ostream& out);
void WriteRttm(const std::vector<RttmRecord>& records, std::ostream& out);

std::vector<RttmRecord> ParseRttm(std::istream& in,
                                  const std::string& source_name);
std::vector<RttmRecord> LoadRttm(const std::string& path);

// ---- Scan export ------------------------------------------------------------

// CSV "p,g_p,r_p,k_at_p" followed by "# p_hat=<int>" and "# k_hat=<int>".
void WriteScanCsv(const NmeScan& scan, std::ostream& out);

// ---- DER --------------------------------------------------------------------

struct DerOptions {
  // Total width of the no-score zone centred on each reference boundary.
  double collar = 0.25;
  // When false, regions with two or more reference speakers are not scored.
  bool score_overlap = false;
};

struct SpeakerMapping {
  std::string recording_id;
  std::string hypothesis;
  std::string reference;

  bool operator==(const SpeakerMapping&) const = default;
};

struct DerReport {
  double der = 0.0;
  double speaker_error = 0.0;
  double missed = 0.0;
  double false_alarm = 0.0;
  // Reference speaker time inside the scoring region, seconds.
  double scored_time = 0.0;
  double collar = 0.0;
  // Absolute error times, seconds.
  double missed_time = 0.0;
  double false_alarm_time = 0.0;
  double speaker_error_time = 0.0;
  std::vector<SpeakerMapping> mapping;
};

// One-to-one assignment maximizing total weight; result[row] is the matched
// column or -1. Hungarian method, O(max(r, c)^3).
std::vector<int> MaxWeightAssignment(
    const std::vector<std::vector<int64_t>>& weights);

// Scores every recording present in `ref`; hypothesis records of other
// recordings are ignored. Times are handled on an integer grid of 0.5 ms.
DerReport ScoreDer(const std::vector<RttmRecord>& ref,
                   const std::vector<RttmRecord>& hyp,
                   const DerOptions& options);

// Time-weighted aggregate over (reference path, hypothesis path) pairs.
DerReport EvaluateCorpus(
    const std::vector<std::pair<std::string, std::string>>& pairs,
    const DerOptions& options, int threads = 1);

}  // namespace nmesc

#endif  // NMESC_DIARIZATION_H_
