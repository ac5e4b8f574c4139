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
#include <functional>
#include <sstream>

#include <gtest/gtest.h>

#include "nmesc/diarization.h"
#include "nmesc/error.h"
#include "nmesc/nme_core.h"
#include "nmesc/testbench.h"
#include "test_util.h"

namespace nmesc {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("nmesc_io_" + std::to_string(::testing::UnitTest::GetInstance()
                                              ->random_seed()) +
             "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string File(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void WriteText(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

Error CaptureError(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "no error raised";
  return Error(ErrorCode::kInvalidArgument, "none");
}

TEST(LoadEmbeddingsTest, TwoLinesThreeDims) {
  TempDir dir;
  const std::string path = dir.File("meeting.jsonl");
  WriteText(path,
            "{\"start\": 0.0, \"end\": 1.5, \"embedding\": [1, 0, 0]}\n"
            "{\"start\": 1.5, \"end\": 3.0, \"embedding\": [0, 1, 0.5]}\n");
  const EmbeddingSequence emb = LoadEmbeddings(path);
  EXPECT_EQ(emb.size(), 2u);
  EXPECT_EQ(emb.dim(), 3u);
  EXPECT_EQ(emb.recording_id(), "meeting");
  EXPECT_EQ(emb[1].embedding, (std::vector<double>{0, 1, 0.5}));
}

TEST(LoadEmbeddingsTest, HeaderSetsRecordingIdAndSortsByStart) {
  std::istringstream in(
      "{\"recording_id\": \"abc\", \"dim\": 2}\n"
      "{\"start\": 3.0, \"end\": 4.0, \"embedding\": [1, 0]}\n"
      "\n"
      "{\"start\": 1.0, \"end\": 2.0, \"embedding\": [0, 1]}\n");
  const EmbeddingSequence emb = ParseEmbeddings(in, "mem", "fallback");
  EXPECT_EQ(emb.recording_id(), "abc");
  EXPECT_EQ(emb[0].start, 1.0);
  EXPECT_EQ(emb[1].start, 3.0);
}

TEST(LoadEmbeddingsTest, EndNotAfterStartNamesLine) {
  std::istringstream in(
      "{\"start\": 0.0, \"end\": 1.0, \"embedding\": [1, 0]}\n"
      "{\"start\": 2.0, \"end\": 2.0, \"embedding\": [0, 1]}\n");
  const Error e = CaptureError([&] { ParseEmbeddings(in, "feed.jsonl", "x"); });
  EXPECT_EQ(e.code(), ErrorCode::kParseError);
  EXPECT_NE(std::string(e.what()).find("feed.jsonl:2"), std::string::npos) << e.what();
}

TEST(LoadEmbeddingsTest, MalformedInputs) {
  struct Case {
    std::string text;
    ErrorCode code;
  };
  const std::vector<Case> cases = {
      {"not json\n", ErrorCode::kParseError},
      {"{\"start\": 0, \"end\": 1}\n", ErrorCode::kParseError},
      {"{\"start\": 0, \"end\": 1, \"embedding\": [1, 0]}\n"
       "{\"start\": 1, \"end\": 2, \"embedding\": [1, 0, 0]}\n",
       ErrorCode::kDimensionMismatch},
      {"{\"recording_id\": \"r\", \"dim\": 3}\n"
       "{\"start\": 0, \"end\": 1, \"embedding\": [1, 0]}\n",
       ErrorCode::kDimensionMismatch},
      {"", ErrorCode::kEmptyInput},
      {"{\"start\": 0, \"end\": 1, \"embedding\": [1, 0]}\n", ErrorCode::kInputTooSmall},
      {"{\"start\": 0, \"end\": 1, \"embedding\": [0, 0]}\n"
       "{\"start\": 1, \"end\": 2, \"embedding\": [1, 0]}\n",
       ErrorCode::kZeroNorm},
  };
  for (const Case& c : cases) {
    std::istringstream in(c.text);
    EXPECT_EQ(CaptureError([&] { ParseEmbeddings(in, "s", "x"); }).code(), c.code)
        << c.text;
  }
}

TEST(LoadEmbeddingsTest, MissingFileIsIoError) {
  const Error e = CaptureError([] { LoadEmbeddings("/nonexistent/dir/x.jsonl"); });
  EXPECT_EQ(e.code(), ErrorCode::kIoError);
  EXPECT_NE(std::string(e.what()).find("/nonexistent/dir/x.jsonl"), std::string::npos);
}

TEST(LoadEmbeddingsTest, RoundTrip) {
  testbench::SynthSpec spec;
  spec.n_clusters = 3;
  spec.dim = 7;
  spec.recording_id = "round";
  const EmbeddingSequence emb = testbench::Generate(spec).emb;
  std::stringstream buffer;
  WriteEmbeddings(emb, buffer);
  EXPECT_EQ(ParseEmbeddings(buffer, "mem", "other"), emb);
}

TEST(RttmTest, ExactLine) {
  DiarizationResult result{"rec", {{0.0, 1.5, 0}}};
  std::ostringstream out;
  WriteRttm(result, out);
  EXPECT_EQ(out.str(), "SPEAKER rec 1 0.000 1.500 <NA> <NA> spk0 <NA> <NA>\n");
}

TEST(RttmTest, MergesContiguousSameLabelSegments) {
  DiarizationResult result{"r", {{0.0, 1.5, 1}, {1.5, 3.0, 1}, {3.0, 4.0, 0}, {5.0, 6.0, 0}}};
  const std::vector<RttmRecord> records = ToRttmRecords(result);
  ASSERT_EQ(records.size(), 3u);
  EXPECT_EQ(records[0], (RttmRecord{"r", 0.0, 3.0, "spk1"}));
  EXPECT_EQ(records[1], (RttmRecord{"r", 3.0, 1.0, "spk0"}));
  EXPECT_EQ(records[2], (RttmRecord{"r", 5.0, 1.0, "spk0"}));
}

TEST(RttmTest, RoundTripThroughFile) {
  TempDir dir;
  const std::string path = dir.File("out.rttm");
  const std::vector<RttmRecord> records = {
      {"a", 0.0, 1.25, "spk0"}, {"a", 1.25, 2.5, "spk1"}, {"b", 4.0, 0.5, "spk0"}};
  {
    std::ofstream out(path);
    WriteRttm(records, out);
  }
  EXPECT_EQ(LoadRttm(path), records);
}

TEST(RttmTest, MalformedLines) {
  for (const std::string text :
       {"SPEECH rec 1 0.0 1.0 <NA> <NA> spk0 <NA> <NA>\n", "SPEAKER rec 1 0.0\n",
        "SPEAKER rec 1 abc 1.0 <NA> <NA> spk0 <NA> <NA>\n",
        "SPEAKER rec 1 0.0 0.0 <NA> <NA> spk0 <NA> <NA>\n",
        "SPEAKER rec 1 -1.0 1.0 <NA> <NA> spk0 <NA> <NA>\n"}) {
    std::istringstream in(text);
    const Error e = CaptureError([&] { ParseRttm(in, "h.rttm"); });
    EXPECT_EQ(e.code(), ErrorCode::kParseError) << text;
    EXPECT_NE(std::string(e.what()).find("h.rttm:1"), std::string::npos) << e.what();
  }
  std::istringstream comments(
      ";; comment\n\nSPEAKER rec 1 0.0 1.0 <NA> <NA> spk0 <NA> <NA>\n");
  EXPECT_EQ(ParseRttm(comments, "c").size(), 1u);
}

TEST(ScanCsvTest, Format) {
  NmeConfig cfg;
  cfg.p_max = 2;
  const NmeScan scan = ScanNme(CosineAffinity(test::TwoIdealPairs()), cfg);
  std::ostringstream out;
  WriteScanCsv(scan, out);
  const std::string text = out.str();
  EXPECT_EQ(text.rfind("p,g_p,r_p,k_at_p\n", 0), 0u);
  EXPECT_NE(text.find("\n1,0,10000000000,1\n2,0.99999999995,2.0000000001,2\n"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("# p_hat=2\n# k_hat=2\n"), std::string::npos) << text;
}

}  // namespace
}  // namespace nmesc
