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
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "nmesc/diarization.h"
#include "nmesc/error.h"

namespace nmesc {
namespace {

constexpr double kMergeGap = 1e-6;

double ParseSeconds(const std::string& token, const std::string& where,
                    const char* field) {
  size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kParseError,
                where + field + " \"" + token + "\" is not a number");
  }
  return v;
}

}  // namespace

std::vector<RttmRecord> ToRttmRecords(const DiarizationResult& result) {
  std::vector<RttmRecord> out;
  if (result.segments.empty()) return out;
  auto emit = [&](const LabeledSegment& s) {
    out.push_back({result.recording_id, s.start, s.end - s.start,
                   "spk" + std::to_string(s.label)});
  };
  LabeledSegment run = result.segments.front();
  for (size_t i = 1; i < result.segments.size(); ++i) {
    const LabeledSegment& s = result.segments[i];
    if (s.label == run.label && s.start - run.end < kMergeGap) {
      run.end = std::max(run.end, s.end);
    } else {
      emit(run);
      run = s;
    }
  }
  emit(run);
  return out;
}

std::string FormatRttmLine(const RttmRecord& r) {
  char onset[64];
  char duration[64];
  std::snprintf(onset, sizeof(onset), "%.3f", r.onset);
  std::snprintf(duration, sizeof(duration), "%.3f", r.duration);
  return "SPEAKER " + r.recording_id + " 1 " + onset + " " + duration +
         " <NA> <NA> " + r.speaker + " <NA> <NA>";
}

void WriteRttm(const std::vector<RttmRecord>& records, std::ostream& out) {
  for (const auto& r : records) out << FormatRttmLine(r) << '\n';
}

void WriteRttm(const DiarizationResult& result, std::ostream& out) {
  WriteRttm(ToRttmRecords(result), out);
}

std::vector<RttmRecord> ParseRttm(std::istream& in,
                                  const std::string& source_name) {
  std::vector<RttmRecord> out;
  std::string text;
  size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    std::istringstream fields_in(text);
    std::vector<std::string> fields;
    for (std::string f; fields_in >> f;) fields.push_back(f);
    if (fields.empty() || fields[0].starts_with(";;")) continue;
    const std::string where = source_name + ":" + std::to_string(line_no) + ": ";
    if (fields[0] != "SPEAKER") {
      throw Error(ErrorCode::kParseError,
                  where + "unsupported record type \"" + fields[0] + "\"");
    }
    if (fields.size() < 8) {
      throw Error(ErrorCode::kParseError,
                  where + "expected at least 8 fields, got " +
                      std::to_string(fields.size()));
    }
    RttmRecord r;
    r.recording_id = fields[1];
    r.onset = ParseSeconds(fields[3], where, "onset");
    r.duration = ParseSeconds(fields[4], where, "duration");
    r.speaker = fields[7];
    if (r.onset < 0.0) {
      throw Error(ErrorCode::kParseError, where + "negative onset");
    }
    if (!(r.duration > 0.0)) {
      throw Error(ErrorCode::kParseError, where + "duration must be > 0");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RttmRecord> LoadRttm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ParseRttm(in, path);
}

void WriteScanCsv(const NmeScan& scan, std::ostream& out) {
  out << "p,g_p,r_p,k_at_p\n";
  char line[128];
  for (const NmeEntry& e : scan.entries) {
    std::snprintf(line, sizeof(line), "%d,%.12g,%.12g,%d\n", e.p, e.gp, e.rp,
                  e.k_at_p);
    out << line;
  }
  out << "# p_hat=" << scan.p_hat << '\n';
  out << "# k_hat=" << scan.k_hat << '\n';
}

}  // namespace nmesc
