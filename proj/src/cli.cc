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

#include "nmesc/cli.h"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "nmesc/diarization.h"
#include "nmesc/error.h"
#include "nmesc/manifest.h"
#include "nmesc/nme_core.h"
#include "nmesc/parallel.h"
#include "nmesc/testbench.h"

namespace nmesc {
namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

// Thrown for semantic usage problems that CLI11 cannot express.
struct UsageError {
  std::string message;
};

struct ClusterArgs {
  std::string embeddings;
  std::string out;
  std::string method = "nme-sc";
  std::optional<int> fixed_k;
  int max_speakers = 8;
  std::optional<int> p_max;
  std::optional<double> sigma;
  uint64_t seed = 42;
  std::string scan_out;
};

struct ScoreArgs {
  std::string ref;
  std::string hyp;
  double collar = 0.25;
  bool overlap = false;
};

struct SynthArgs {
  int clusters = 0;
  std::string per_cluster;
  int dim = 0;
  double noise = 0.0;
  double concentration = 1.0;
  uint64_t seed = 0;
  std::string out;
  std::string truth_out;
  std::string recording_id = "synth";
};

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIoError, "cannot write " + path);
  f << contents;
  if (!f) throw Error(ErrorCode::kIoError, "failed writing " + path);
}

nlohmann::ordered_json OptionalInt(const std::optional<int>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

int CmdCluster(const ClusterArgs& a, std::ostream& out) {
  if (a.method == "njw-sc") {
    if (!a.sigma) throw UsageError{"--method njw-sc requires --sigma"};
    if (a.p_max || !a.scan_out.empty()) {
      throw UsageError{"--p-max and --scan-out apply to nme-sc only"};
    }
  } else if (a.sigma) {
    throw UsageError{"--sigma applies to njw-sc only"};
  }

  const EmbeddingSequence emb = LoadEmbeddings(a.embeddings);
  RunManifest manifest;
  manifest.command = "cluster";
  manifest.inputs.emplace_back(a.embeddings, FileSha256(a.embeddings));
  auto& cfg_json = manifest.config;
  cfg_json["method"] = a.method;
  cfg_json["num_segments"] = emb.size();
  cfg_json["dim"] = emb.dim();

  std::ostringstream rttm;
  if (a.method == "nme-sc") {
    NmeConfig cfg;
    cfg.p_max = a.p_max;
    cfg.max_speakers = a.max_speakers;
    cfg.fixed_k = a.fixed_k;
    cfg.seed = a.seed;
    cfg.threads = ThreadsFromEnvironment();
    ValidateConfig(cfg);

    cfg_json["epsilon"] = cfg.epsilon;
    cfg_json["p_min"] = 1;
    cfg_json["p_max"] = ResolvePMax(cfg, emb.size());
    cfg_json["p_max_source"] = a.p_max ? "user" : "default floor(N/4)";
    cfg_json["max_speakers"] = cfg.max_speakers;
    cfg_json["fixed_k"] = OptionalInt(cfg.fixed_k);
    cfg_json["seed"] = cfg.seed;
    cfg_json["kmeans_restarts"] = cfg.kmeans_restarts;
    cfg_json["kmeans_max_iterations"] = KMeansConfig{}.max_iterations;

    const NmeScResult res = NmeSc(emb, cfg);
    WriteRttm(res.result, rttm);
    if (!a.scan_out.empty()) {
      std::ostringstream csv;
      WriteScanCsv(res.scan, csv);
      WriteFile(a.scan_out, csv.str());
    }
    out << "p_hat=" << res.scan.p_hat << " k_hat=" << res.scan.k_hat
        << " speakers=" << res.result.num_speakers() << '\n';
  } else if (a.method == "njw-sc") {
    NjwConfig cfg;
    cfg.sigma = *a.sigma;
    cfg.k = a.fixed_k;
    cfg.max_speakers = a.max_speakers;
    cfg.seed = a.seed;

    cfg_json["sigma"] = cfg.sigma;
    cfg_json["k"] = OptionalInt(cfg.k);
    cfg_json["max_speakers"] = cfg.max_speakers;
    cfg_json["seed"] = cfg.seed;
    cfg_json["kmeans_restarts"] = cfg.kmeans_restarts;
    cfg_json["kmeans_max_iterations"] = KMeansConfig{}.max_iterations;

    const NjwResult res = NjwSc(emb, cfg);
    WriteRttm(res.result, rttm);
    out << "k=" << res.k << " speakers=" << res.result.num_speakers() << '\n';
  } else {
    throw UsageError{"unknown method " + a.method};
  }
  WriteFile(a.out, rttm.str());
  WriteManifest(manifest, a.out + ".manifest.json");
  return 0;
}

int CmdScore(const ScoreArgs& a, std::ostream& out) {
  DerOptions options;
  options.collar = a.collar;
  options.score_overlap = a.overlap;
  const DerReport r = ScoreDer(LoadRttm(a.ref), LoadRttm(a.hyp), options);

  char buf[160];
  auto row = [&](const char* name, double frac, double secs) {
    std::snprintf(buf, sizeof(buf), "%-14s %7.2f %%  %10.3f s\n", name,
                  100.0 * frac, secs);
    out << buf;
  };
  std::snprintf(buf, sizeof(buf), "%-14s %10.3f s   collar %.3f s%s\n",
                "scored time", r.scored_time, r.collar,
                a.overlap ? ", overlap scored" : "");
  out << buf;
  row("missed", r.missed, r.missed_time);
  row("false alarm", r.false_alarm, r.false_alarm_time);
  row("speaker error", r.speaker_error, r.speaker_error_time);
  row("DER", r.der,
      r.missed_time + r.false_alarm_time + r.speaker_error_time);
  for (const auto& m : r.mapping) {
    out << "map " << m.recording_id << ' ' << m.hypothesis << " -> "
        << m.reference << '\n';
  }
  std::snprintf(buf, sizeof(buf), "DER=%.4f MS=%.4f FA=%.4f SE=%.4f\n", r.der,
                r.missed, r.false_alarm, r.speaker_error);
  out << buf;
  return 0;
}

std::pair<int, int> ParseRange(const std::string& text) {
  const size_t sep = text.find_first_of("-:");
  try {
    size_t used = 0;
    if (sep == std::string::npos) {
      const int v = std::stoi(text, &used);
      if (used == text.size()) return {v, v};
    } else {
      const std::string lo = text.substr(0, sep);
      const std::string hi = text.substr(sep + 1);
      size_t used_hi = 0;
      const int a = std::stoi(lo, &used);
      const int b = std::stoi(hi, &used_hi);
      if (used == lo.size() && used_hi == hi.size()) return {a, b};
    }
  } catch (const std::exception&) {
  }
  throw UsageError{"--per-cluster expects <n> or <min>-<max>, got " + text};
}

int CmdSynth(const SynthArgs& a, std::ostream& out) {
  testbench::SynthSpec spec;
  spec.n_clusters = a.clusters;
  std::tie(spec.min_per_cluster, spec.max_per_cluster) =
      ParseRange(a.per_cluster);
  spec.dim = a.dim;
  spec.noise = a.noise;
  spec.within_concentration = a.concentration;
  spec.seed = a.seed;
  spec.recording_id = a.recording_id;
  const testbench::SynthData data = testbench::Generate(spec);

  std::ostringstream emb_text;
  WriteEmbeddings(data.emb, emb_text);
  std::ostringstream truth_text;
  WriteRttm(testbench::TruthResult(data), truth_text);
  WriteFile(a.out, emb_text.str());
  WriteFile(a.truth_out, truth_text.str());

  RunManifest manifest;
  manifest.command = "synth";
  auto& c = manifest.config;
  c["clusters"] = spec.n_clusters;
  c["min_per_cluster"] = spec.min_per_cluster;
  c["max_per_cluster"] = spec.max_per_cluster;
  c["dim"] = spec.dim;
  c["noise"] = spec.noise;
  c["concentration"] = spec.within_concentration;
  c["min_separation_deg"] = spec.min_separation_deg;
  c["segment_duration"] = spec.segment_duration;
  c["seed"] = spec.seed;
  c["recording_id"] = spec.recording_id;
  WriteManifest(manifest, a.out + ".manifest.json");
  out << "wrote " << data.emb.size() << " segments, " << spec.n_clusters
      << " speakers\n";
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Auto-tuning spectral clustering for speaker diarization"};
  app.require_subcommand(1);

  ClusterArgs cluster;
  auto* c = app.add_subcommand("cluster", "Cluster segment embeddings to RTTM");
  c->add_option("--embeddings", cluster.embeddings, "JSONL embeddings")
      ->required();
  c->add_option("--out", cluster.out, "Output RTTM path")->required();
  c->add_option("--method", cluster.method, "nme-sc or njw-sc")
      ->check(CLI::IsMember({"nme-sc", "njw-sc"}));
  c->add_option("--fixed-k", cluster.fixed_k, "Known number of speakers")
      ->check(CLI::PositiveNumber);
  c->add_option("--max-speakers", cluster.max_speakers, "Speaker cap")
      ->check(CLI::PositiveNumber);
  c->add_option("--p-max", cluster.p_max, "Upper end of the p search")
      ->check(CLI::PositiveNumber);
  c->add_option("--sigma", cluster.sigma, "Kernel scale (njw-sc only)")
      ->check(CLI::PositiveNumber);
  c->add_option("--seed", cluster.seed, "k-means seed");
  c->add_option("--scan-out", cluster.scan_out, "Write the p scan as CSV");

  ScoreArgs score;
  auto* s = app.add_subcommand("score", "Diarization error rate");
  s->add_option("--ref", score.ref, "Reference RTTM")->required();
  s->add_option("--hyp", score.hyp, "Hypothesis RTTM")->required();
  s->add_option("--collar", score.collar, "No-score collar width, seconds")
      ->check(CLI::NonNegativeNumber);
  s->add_flag("--overlap", score.overlap, "Score overlapped speech");

  SynthArgs synth;
  auto* y = app.add_subcommand("synth", "Generate synthetic embeddings");
  y->add_option("--clusters", synth.clusters, "Number of speakers")
      ->required()
      ->check(CLI::PositiveNumber);
  y->add_option("--per-cluster", synth.per_cluster,
                "Segments per speaker, <n> or <min>-<max>")
      ->required();
  y->add_option("--dim", synth.dim, "Embedding dimension")->required();
  y->add_option("--noise", synth.noise, "Gaussian noise std")
      ->required()
      ->check(CLI::NonNegativeNumber);
  y->add_option("--concentration", synth.concentration,
                "Centroid scale before noise")
      ->check(CLI::PositiveNumber);
  y->add_option("--seed", synth.seed, "Generator seed")->required();
  y->add_option("--out", synth.out, "Output embeddings JSONL")->required();
  y->add_option("--truth-out", synth.truth_out, "Output truth RTTM")
      ->required();
  y->add_option("--recording-id", synth.recording_id, "Recording id");

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  if (storage.empty()) storage.push_back("nme_sc");
  for (auto& a : storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (c->parsed()) return CmdCluster(cluster, out);
    if (s->parsed()) return CmdScore(score, out);
    if (y->parsed()) return CmdSynth(synth, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace nmesc
