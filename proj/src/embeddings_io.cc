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

#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "nmesc/diarization.h"
#include "nmesc/error.h"

namespace nmesc {
namespace {

std::string Where(const std::string& source, size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

double RequireNumber(const nlohmann::json& obj, const char* key,
                     const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_number()) {
    throw Error(ErrorCode::kParseError,
                where + "field \"" + key + "\" missing or not a number");
  }
  return it->get<double>();
}

}  // namespace

EmbeddingSequence ParseEmbeddings(std::istream& in,
                                  const std::string& source_name,
                                  const std::string& default_recording_id) {
  std::string recording_id = default_recording_id;
  long long header_dim = -1;
  std::vector<Segment> segments;
  std::string text;
  size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, text)) {
    ++line_no;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = Where(source_name, line_no);
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::kParseError, where + "invalid JSON (" +
                                              std::string(e.what()) + ")");
    }
    if (!obj.is_object()) {
      throw Error(ErrorCode::kParseError, where + "expected a JSON object");
    }
    const bool first = !seen_content;
    seen_content = true;
    if (first && !obj.contains("start")) {
      auto id = obj.find("recording_id");
      if (id != obj.end()) {
        if (!id->is_string()) {
          throw Error(ErrorCode::kParseError,
                      where + "\"recording_id\" must be a string");
        }
        recording_id = id->get<std::string>();
      }
      auto dim = obj.find("dim");
      if (dim != obj.end()) {
        if (!dim->is_number_integer() || dim->get<long long>() < 1) {
          throw Error(ErrorCode::kParseError,
                      where + "\"dim\" must be a positive integer");
        }
        header_dim = dim->get<long long>();
      }
      continue;
    }

    Segment seg;
    seg.start = RequireNumber(obj, "start", where);
    seg.end = RequireNumber(obj, "end", where);
    if (!(seg.end > seg.start)) {
      throw Error(ErrorCode::kParseError, where + "end must be > start");
    }
    auto emb = obj.find("embedding");
    if (emb == obj.end() || !emb->is_array() || emb->empty()) {
      throw Error(ErrorCode::kParseError,
                  where + "\"embedding\" missing or not a non-empty array");
    }
    seg.embedding.reserve(emb->size());
    for (const auto& v : *emb) {
      if (!v.is_number()) {
        throw Error(ErrorCode::kParseError,
                    where + "embedding entries must be numbers");
      }
      seg.embedding.push_back(v.get<double>());
    }
    const size_t expected =
        header_dim > 0 ? static_cast<size_t>(header_dim)
                       : (segments.empty() ? seg.embedding.size()
                                           : segments.front().embedding.size());
    if (seg.embedding.size() != expected) {
      throw Error(ErrorCode::kDimensionMismatch,
                  where + "embedding has " +
                      std::to_string(seg.embedding.size()) +
                      " values, expected " + std::to_string(expected));
    }
    segments.push_back(std::move(seg));
  }
  if (segments.empty()) {
    throw Error(ErrorCode::kEmptyInput, source_name + ": no segments");
  }
  return EmbeddingSequence::Create(std::move(recording_id),
                                   std::move(segments));
}

EmbeddingSequence LoadEmbeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ParseEmbeddings(in, path, std::filesystem::path(path).stem().string());
}

void WriteEmbeddings(const EmbeddingSequence& emb, std::ostream& out) {
  nlohmann::ordered_json header;
  header["recording_id"] = emb.recording_id();
  header["dim"] = emb.dim();
  out << header.dump() << '\n';
  for (const Segment& s : emb.segments()) {
    nlohmann::ordered_json line;
    line["start"] = s.start;
    line["end"] = s.end;
    line["embedding"] = s.embedding;
    out << line.dump() << '\n';
  }
}

}  // namespace nmesc
