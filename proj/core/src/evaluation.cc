// Copyright 2026 The psv Authors. All Rights Reserved.
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

#include "psv/evaluation.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "psv/error.h"
#include "psv/signal_io.h"
#include "psv/synth.h"

namespace psv {
namespace {

constexpr const char* kManifestHeader = "path,speaker_id,vowel,split";

std::string Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

// Runs fn(i) for i in [0, n) on up to `jobs` threads. Each index is handled
// exactly once; callers write results into per-index slots.
template <typename Fn>
void ParallelFor(std::size_t n, unsigned jobs, Fn fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(n, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (unsigned t = 0; t < jobs; ++t) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

struct Processed {
  std::optional<UtteranceFeatures> features;
  std::string error;
};

std::vector<Processed> ProcessAll(const std::vector<ManifestEntry>& entries,
                                  const PipelineConfig& config, unsigned jobs) {
  std::vector<Processed> out(entries.size());
  ParallelFor(entries.size(), jobs, [&](std::size_t i) {
    try {
      out[i].features = ProcessFile(entries[i].path, entries[i].vowel, config);
    } catch (const std::exception& e) {
      out[i].error = e.what();
    }
  });
  return out;
}

std::string GroupName(const std::string& speaker, Vowel vowel) {
  return "speaker '" + speaker + "' vowel /" + VowelLabel(vowel) + "/";
}

void Tally(SystemRow& row, bool accepted, bool correct) {
  ++row.total;
  if (!accepted) {
    ++row.rejected;
    return;
  }
  ++row.accepted;
  if (correct) {
    ++row.correct;
  } else {
    ++row.wrong;
  }
}

std::string Percent(const SystemRow& row) {
  const auto acc = row.accuracy_percent();
  if (!acc) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", *acc);
  return buf;
}

}  // namespace

std::vector<ManifestEntry> LoadManifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open manifest '" + path.string() + "'");
  const std::filesystem::path base = path.parent_path();
  std::string line;
  if (!std::getline(in, line) || Trim(line) != kManifestHeader) {
    throw Error(path.string() + ": manifest header must be '" + std::string(kManifestHeader) + "'");
  }
  std::vector<ManifestEntry> entries;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(Trim(f));
    if (fields.size() != 4) throw Error(where + "expected 4 comma-separated fields");
    ManifestEntry e;
    e.path = fields[0];
    if (e.path.empty()) throw Error(where + "empty path");
    if (e.path.is_relative()) e.path = base / e.path;
    e.speaker_id = fields[1];
    if (e.speaker_id.empty()) throw Error(where + "empty speaker id");
    try {
      e.vowel = ParseVowel(fields[2]);
    } catch (const Error& err) {
      throw Error(where + err.what());
    }
    if (fields[3] == "train") {
      e.split = Split::kTrain;
    } else if (fields[3] == "test") {
      e.split = Split::kTest;
    } else {
      throw Error(where + "split must be 'train' or 'test', got '" + fields[3] + "'");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

void WriteManifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest '" + path.string() + "'");
  const std::filesystem::path base = path.parent_path();
  out << kManifestHeader << '\n';
  for (const auto& e : entries) {
    std::filesystem::path p = e.path;
    if (!base.empty() && p.is_absolute() == base.is_absolute()) {
      const auto rel = p.lexically_relative(base);
      if (!rel.empty() && *rel.begin() != "..") p = rel;
    }
    out << p.generic_string() << ',' << e.speaker_id << ',' << VowelLabel(e.vowel) << ','
        << (e.split == Split::kTrain ? "train" : "test") << '\n';
  }
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

std::vector<ManifestEntry> FilterSplit(const std::vector<ManifestEntry>& entries, Split split) {
  std::vector<ManifestEntry> out;
  std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
               [split](const ManifestEntry& e) { return e.split == split; });
  return out;
}

ModelSet RunTraining(const std::vector<ManifestEntry>& entries, const PipelineConfig& config,
                     unsigned jobs, const WarningSink& warn) {
  config.Validate();
  const auto processed = ProcessAll(entries, config, jobs);

  std::map<ModelKey, std::vector<UtteranceFeatures>> groups;
  std::map<ModelKey, std::size_t> failures;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const ModelKey key{entries[i].speaker_id, entries[i].vowel};
    auto& group = groups[key];
    if (processed[i].features) {
      group.push_back(*processed[i].features);
    } else {
      ++failures[key];
      if (warn) warn("skipping " + processed[i].error);
    }
  }

  ModelSet set;
  for (const auto& [key, features] : groups) {
    if (features.empty()) {
      throw Error("training failed for " + GroupName(key.first, key.second) + ": all " +
                  std::to_string(failures[key]) + " files failed");
    }
    set.Add(BuildModel(key.first, key.second, features));
  }
  return set;
}

std::optional<double> SystemRow::accuracy_percent() const {
  if (accepted == 0) return std::nullopt;
  return 100.0 * static_cast<double>(correct) / static_cast<double>(accepted);
}

EvalReport AggregateResults(const std::vector<UtteranceResult>& results) {
  EvalReport report;
  for (const auto& r : results) {
    Tally(report.cepstral, true, r.cepstral_nearest == r.true_speaker);
    Tally(report.temporal, true, r.temporal_nearest == r.true_speaker);
    const bool accepted = r.combined.accepted();
    const bool correct = accepted && *r.combined.speaker_id == r.true_speaker;
    Tally(report.combined, accepted, correct);
    Tally(report.per_vowel[static_cast<std::size_t>(r.vowel)], accepted, correct);
  }
  return report;
}

EvalReport RunEvaluation(const std::vector<ManifestEntry>& entries, const ModelSet& models,
                         const PipelineConfig& config, unsigned jobs, const WarningSink& warn,
                         std::vector<UtteranceResult>* details) {
  config.Validate();
  for (const auto& e : entries) {
    if (models.ModelsForVowel(e.vowel).empty()) {
      throw Error(std::string("no enrolled model for test vowel /") + VowelLabel(e.vowel) + "/");
    }
  }
  const auto processed = ProcessAll(entries, config, jobs);

  std::vector<UtteranceResult> results;
  results.reserve(entries.size());
  std::size_t failed = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!processed[i].features) {
      ++failed;
      if (warn) warn("skipping " + processed[i].error);
      continue;
    }
    const DistanceReport scores = ScoreAgainstModels(*processed[i].features, models, config.weights);
    results.push_back({entries[i].speaker_id, entries[i].vowel, scores.argmin_cepstral,
                       scores.argmin_temporal, IdentifyCombined(scores)});
  }
  EvalReport report = AggregateResults(results);
  report.failed = failed;
  if (details != nullptr) *details = std::move(results);
  return report;
}

void WriteReportCsv(const EvalReport& report, std::ostream& out) {
  out << "section,name,total,accepted,correct,wrong,rejected,accuracy_percent\n";
  auto row = [&out](std::string_view section, std::string_view name, const SystemRow& r) {
    out << section << ',' << name << ',' << r.total << ',' << r.accepted << ',' << r.correct << ','
        << r.wrong << ',' << r.rejected << ',';
    if (const auto acc = r.accuracy_percent()) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.4f", *acc);
      out << buf;
    } else {
      out << "NA";
    }
    out << '\n';
  };
  row("system", "cepstral", report.cepstral);
  row("system", "temporal", report.temporal);
  row("system", "combined", report.combined);
  for (Vowel v : kAllVowels) {
    row("vowel", std::string(1, VowelLabel(v)), report.per_vowel[static_cast<std::size_t>(v)]);
  }
}

void PrintReportTables(const EvalReport& report, std::ostream& out) {
  out << std::left << std::setw(24) << "System" << std::right << std::setw(8) << "Total"
      << std::setw(24) << "Correctly recognized" << std::setw(12) << "Accuracy" << '\n';
  auto system = [&out](std::string_view name, const SystemRow& r) {
    const std::string correct =
        std::to_string(r.correct) + " (out of " + std::to_string(r.accepted) + ")";
    out << std::left << std::setw(24) << name << std::right << std::setw(8) << r.total
        << std::setw(24) << correct << std::setw(12) << Percent(r) << '\n';
  };
  system("Cepstral coefficients", report.cepstral);
  system("Temporal features", report.temporal);
  system("Combined", report.combined);
  out << '\n';

  out << std::left << std::setw(8) << "Vowel" << std::right << std::setw(8) << "Total"
      << std::setw(10) << "Rejected" << std::setw(18) << "Correct" << std::setw(8) << "Wrong"
      << '\n';
  for (Vowel v : kAllVowels) {
    const SystemRow& r = report.per_vowel[static_cast<std::size_t>(v)];
    const std::string correct = std::to_string(r.correct) + " (" + Percent(r) + ")";
    out << std::left << std::setw(8) << (std::string("/") + VowelLabel(v) + "/") << std::right
        << std::setw(8) << r.total << std::setw(10) << r.rejected << std::setw(18) << correct
        << std::setw(8) << r.wrong << '\n';
  }
  if (report.failed > 0) out << "\n" << report.failed << " test file(s) could not be processed\n";
}

std::vector<ManifestEntry> MakeSyntheticCorpus(const CorpusSpec& spec,
                                               const std::filesystem::path& dir) {
  if (spec.n_speakers < 2) throw Error("synthetic corpus needs at least 2 speakers");
  if (spec.train_per_vowel == 0) throw Error("synthetic corpus needs at least 1 training utterance");
  if (spec.f0_jitter < 0.0 || spec.formant_jitter < 0.0) throw Error("jitter must be non-negative");

  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

  struct Voice {
    std::string id;
    double f0 = 0.0;
    double tract_scale = 1.0;
    std::array<double, 3> formant_offset{};
    double bandwidth_scale = 1.0;
  };
  const int width = static_cast<int>(std::to_string(spec.n_speakers).size());
  std::vector<Voice> voices(spec.n_speakers);
  for (std::size_t s = 0; s < spec.n_speakers; ++s) {
    std::ostringstream id;
    id << 'S' << std::setw(std::max(width, 2)) << std::setfill('0') << s + 1;
    voices[s].id = id.str();
    voices[s].f0 = uniform(85.0, 175.0);
    voices[s].tract_scale = uniform(0.88, 1.12);
    for (double& o : voices[s].formant_offset) o = uniform(-0.04, 0.04);
    voices[s].bandwidth_scale = uniform(0.8, 1.25);
  }

  std::filesystem::create_directories(dir);
  std::vector<ManifestEntry> entries;
  for (const Voice& voice : voices) {
    std::filesystem::create_directories(dir / voice.id);
    for (Vowel vowel : kAllVowels) {
      const auto reference = ReferenceFormants(vowel);
      for (Split split : {Split::kTrain, Split::kTest}) {
        const std::size_t count = split == Split::kTrain ? spec.train_per_vowel : spec.test_per_vowel;
        for (std::size_t k = 0; k < count; ++k) {
          VowelSpec v;
          v.f0_hz = voice.f0 * (1.0 + uniform(-spec.f0_jitter, spec.f0_jitter));
          for (std::size_t i = 0; i < reference.size(); ++i) {
            const double jitter = 1.0 + uniform(-spec.formant_jitter, spec.formant_jitter);
            v.formants.push_back({reference[i].center_hz * voice.tract_scale *
                                      (1.0 + voice.formant_offset[i]) * jitter,
                                  reference[i].bandwidth_hz * voice.bandwidth_scale});
          }
          v.duration_s = spec.duration_s;
          v.sample_rate_hz = spec.sample_rate_hz;
          v.seed = rng();
          v.peak_amplitude = uniform(6000.0, 20000.0);
          v.noise_level = spec.noise_level;
          v.padding_s = 0.05;
          v.ramp_s = 0.02;

          SynthesizedVowel synth = SynthVowel(v);
          std::vector<double> quantized(synth.buffer.data());
          for (double& s : quantized) s = std::round(s);

          const std::string file = std::string(1, VowelLabel(vowel)) + "_" +
                                   (split == Split::kTrain ? "train" : "test") + "_" +
                                   std::to_string(k) + ".txt";
          const std::filesystem::path path = dir / voice.id / file;
          WriteTextSamples(SampleBuffer(std::move(quantized), spec.sample_rate_hz), path);
          entries.push_back({path, voice.id, vowel, split});
        }
      }
    }
  }
  WriteManifest(entries, dir / "manifest.csv");
  return entries;
}

}  // namespace psv
