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

#ifndef PSV_EVALUATION_H_
#define PSV_EVALUATION_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "psv/decision.h"
#include "psv/modeling.h"
#include "psv/pipeline.h"
#include "psv/types.h"

namespace psv {

enum class Split { kTrain, kTest };

struct ManifestEntry {
  std::filesystem::path path;
  std::string speaker_id;
  Vowel vowel = Vowel::kA;
  Split split = Split::kTrain;
};

// CSV with header `path,speaker_id,vowel,split`. Relative paths are resolved
// against the manifest's directory.
std::vector<ManifestEntry> LoadManifest(const std::filesystem::path& path);
// Paths are written relative to the manifest's directory when possible.
void WriteManifest(const std::vector<ManifestEntry>& entries, const std::filesystem::path& path);

std::vector<ManifestEntry> FilterSplit(const std::vector<ManifestEntry>& entries, Split split);

// Receives one message per file that failed to process.
using WarningSink = std::function<void(const std::string&)>;

// Runs the pipeline on every entry and averages per (speaker, vowel). Failed
// files are reported to `warn` and skipped; a group left with no successful
// file aborts training. `jobs` = 0 picks the hardware concurrency.
ModelSet RunTraining(const std::vector<ManifestEntry>& entries, const PipelineConfig& config,
                     unsigned jobs = 0, const WarningSink& warn = {});

struct UtteranceResult {
  std::string true_speaker;
  Vowel vowel = Vowel::kA;
  std::string cepstral_nearest;
  std::string temporal_nearest;
  VerificationOutcome combined;
};

struct SystemRow {
  std::size_t total = 0;
  std::size_t accepted = 0;
  std::size_t correct = 0;
  std::size_t wrong = 0;
  std::size_t rejected = 0;

  // correct / accepted, in percent; empty when nothing was accepted.
  std::optional<double> accuracy_percent() const;
};

struct EvalReport {
  SystemRow cepstral;
  SystemRow temporal;
  SystemRow combined;
  std::array<SystemRow, 5> per_vowel{};  // combined system, indexed by Vowel
  std::size_t failed = 0;                // test files the pipeline could not process
};

// Folds per-utterance outcomes, in order, into the report tables.
EvalReport AggregateResults(const std::vector<UtteranceResult>& results);

// Scores every entry. Files that fail the pipeline are counted in
// `failed`, reported to `warn`, and left out of the tables. Throws if a
// test vowel has no enrolled model.
EvalReport RunEvaluation(const std::vector<ManifestEntry>& entries, const ModelSet& models,
                         const PipelineConfig& config, unsigned jobs = 0,
                         const WarningSink& warn = {},
                         std::vector<UtteranceResult>* details = nullptr);

// Machine-readable form: one row per system and one per vowel.
void WriteReportCsv(const EvalReport& report, std::ostream& out);
// Aligned text tables shaped like the published accuracy tables.
void PrintReportTables(const EvalReport& report, std::ostream& out);

struct CorpusSpec {
  std::size_t n_speakers = 10;
  std::size_t train_per_vowel = 20;
  std::size_t test_per_vowel = 5;
  std::uint64_t seed = 1;
  int sample_rate_hz = kDefaultSampleRateHz;
  double duration_s = 0.3;
  double f0_jitter = 0.02;       // max relative f0 perturbation per utterance
  double formant_jitter = 0.03;  // max relative formant perturbation
  double noise_level = 0.002;
};

// Writes one text file per utterance under `dir` plus `dir/manifest.csv`.
// Returns the manifest entries. Throws for fewer than two speakers.
std::vector<ManifestEntry> MakeSyntheticCorpus(const CorpusSpec& spec,
                                               const std::filesystem::path& dir);

}  // namespace psv

#endif  // PSV_EVALUATION_H_
