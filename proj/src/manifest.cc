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

#include "nmesc/manifest.h"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "nmesc/error.h"

namespace nmesc {

nlohmann::ordered_json RunManifest::ToJson() const {
  nlohmann::ordered_json j;
  j["tool"] = kToolName;
  j["version"] = tool_version;
  j["command"] = command;
  j["config"] = config;
  nlohmann::ordered_json in = nlohmann::ordered_json::array();
  for (const auto& [path, digest] : inputs) {
    in.push_back({{"path", path}, {"sha256", digest}});
  }
  j["inputs"] = in;
  return j;
}

RunManifest RunManifest::FromJson(const nlohmann::ordered_json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.tool_version = j.at("version").get<std::string>();
    m.config = j.at("config");
    for (const auto& in : j.at("inputs")) {
      m.inputs.emplace_back(in.at("path").get<std::string>(),
                            in.at("sha256").get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError,
                std::string("malformed manifest: ") + e.what());
  }
  return m;
}

std::string Sha256Hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kIoError, "SHA-256 computation failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string FileSha256(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return Sha256Hex(ss.str());
}

void WriteManifest(const RunManifest& manifest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path);
  out << manifest.ToJson().dump(2) << '\n';
  if (!out) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

RunManifest ReadManifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  return RunManifest::FromJson(j);
}

}  // namespace nmesc
