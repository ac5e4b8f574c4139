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

#ifndef NMESC_MANIFEST_H_
#define NMESC_MANIFEST_H_

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace nmesc {

inline constexpr const char* kToolName = "nme-sc";
inline constexpr const char* kToolVersion = "0.1.0";

// Everything needed to reproduce one CLI run. Serialized next to every output
// file as <output>.manifest.json.
struct RunManifest {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  // (path, sha256 hex) per input file.
  std::vector<std::pair<std::string, std::string>> inputs;
  std::string tool_version = kToolVersion;

  nlohmann::ordered_json ToJson() const;
  static RunManifest FromJson(const nlohmann::ordered_json& j);
};

std::string Sha256Hex(const std::string& bytes);
// Throws kIoError if the file cannot be read.
std::string FileSha256(const std::string& path);

void WriteManifest(const RunManifest& manifest, const std::string& path);
RunManifest ReadManifest(const std::string& path);

}  // namespace nmesc

#endif  // NMESC_MANIFEST_H_
