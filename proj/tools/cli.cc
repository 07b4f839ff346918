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

#include "cli.h"

#include <CLI11.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include "psv/decision.h"
#include "psv/error.h"
#include "psv/evaluation.h"
#include "psv/modeling.h"
#include "psv/pipeline.h"
#include "psv/preprocess.h"
#include "psv/signal_io.h"
#include "psv/synth.h"

namespace psv::cli {
namespace {

namespace fs = std::filesystem;

struct FlagSpec {
  const char* flag;
  const char* key;
  const char* default_value;
  const char* help;
};

constexpr std::array kPipelineFlags = {
    FlagSpec{"--sample-rate", "sample_rate_hz", "16000", "Sample rate of text inputs (Hz)"},
    FlagSpec{"--frame-len", "frame_len", "100", "Energy frame length (samples)"},
    FlagSpec{"--frame-shift", "frame_shift", "50", "Energy frame shift (samples)"},
    FlagSpec{"--silence-multiplier", "silence_multiplier", "1.1",
             "Speech frames exceed this multiple of the silence energy"},
    FlagSpec{"--normalization-target", "normalization_target", "10000", "Peak amplitude after normalization"},
    FlagSpec{"--silence-frames", "silence_frames", "10",
             "Number of quietest frames that define the silence energy"},
    FlagSpec{"--min-f0", "min_f0_hz", "50", "Lowest admissible F0 (Hz)"},
    FlagSpec{"--max-f0", "max_f0_hz", "500", "Highest admissible F0 (Hz)"},
    FlagSpec{"--lpc-order", "lpc_order", "12", "LPC analysis order"},
    FlagSpec{"--periods-before", "periods_before", "10", "Steady-state periods before the peak period"},
    FlagSpec{"--periods-after", "periods_after", "9", "Steady-state periods after the peak period"},
    FlagSpec{"--max-cepstral-frames", "max_cepstral_frames", "18", "Cap on averaged 3-period frames"},
    FlagSpec{"--cepstral-weights", "cepstral_weights", "1,3,7,13,19,22,25,33,42,50,56,61",
             "12 comma-separated cepstral distance weights"},
    FlagSpec{"--temporal-weights", "temporal_weights", "1,1,1,1",
             "4 comma-separated temporal distance weights"},
};

// Pipeline flags for one subcommand. Values given on the command line
// override the optional config file, which overrides the defaults.
class PipelineFlags {
 public:
  void Attach(CLI::App* app) {
    app->add_option("--config", config_path_, "Optional key=value config file");
    for (const auto& spec : kPipelineFlags) {
      options_[spec.key] = app->add_option(spec.flag, values_[spec.key], spec.help)
                               ->type_name("VALUE")
                               ->default_str(spec.default_value)
                               ->group("Pipeline");
    }
  }

  PipelineConfig Build() const {
    PipelineConfig config;
    if (!config_path_.empty()) ApplyConfigFile(config, config_path_);
    for (const auto& spec : kPipelineFlags) {
      if (options_.at(spec.key)->count() > 0) ApplyConfigOption(config, spec.key, values_.at(spec.key));
    }
    config.Validate();
    return config;
  }

 private:
  std::string config_path_;
  std::map<std::string, std::string> values_;
  std::map<std::string, CLI::Option*> options_;
};

std::string FormatSig9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::vector<Formant> ParseFormants(const std::string& text) {
  std::vector<Formant> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error("formant '" + item + "' must be center:bandwidth");
    try {
      out.push_back({std::stod(item.substr(0, colon)), std::stod(item.substr(colon + 1))});
    } catch (const std::logic_error&) {
      throw Error("formant '" + item + "' is not numeric");
    }
  }
  return out;
}

void PrintDistanceTable(const DistanceReport& report, std::ostream& out) {
  out << "speaker cepstral_distance temporal_distance\n";
  for (const auto& row : report.rows) {
    out << row.speaker_id << ' ' << FormatSig9(row.cepstral) << ' ' << FormatSig9(row.temporal)
        << '\n';
  }
}

DistanceReport ScoreFile(const std::string& models_path, const std::string& input,
                         const std::string& vowel, const PipelineConfig& config) {
  const ModelSet models = LoadModels(models_path);
  const UtteranceFeatures f = ProcessFile(input, ParseVowel(vowel), config);
  return ScoreAgainstModels(f, models, config.weights);
}

}  // namespace

int ParseAndDispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pitch-synchronous speaker verification toolkit"};
  app.name(args.empty() ? "psv" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.footer(
      "Exit status: 0 success, 1 usage error, 2 data error.\n"
      "verify: 0 verified, 2 impostor, 3 retry (the two systems disagreed).");

  std::function<int()> action;

  // preprocess
  auto* pre = app.add_subcommand("preprocess", "DC removal, peak normalization and silence trimming");
  std::string pre_in, pre_out;
  PipelineFlags pre_flags;
  pre->add_option("input", pre_in, "Input signal (.wav or text)")->required();
  pre->add_option("output", pre_out, "Output text-sample file")->required();
  pre_flags.Attach(pre);
  pre->callback([&] {
    action = [&] {
      const PipelineConfig config = pre_flags.Build();
      WriteTextSamples(Preprocess(LoadSignal(pre_in, config.sample_rate_hz), config.preprocess), pre_out);
      return kExitOk;
    };
  });

  // pitch-marks
  auto* marks_cmd = app.add_subcommand("pitch-marks", "Print pitch-period marks of a preprocessed signal");
  std::string marks_in;
  PipelineFlags marks_flags;
  marks_cmd->add_option("input", marks_in, "Input signal (.wav or text)")->required();
  marks_flags.Attach(marks_cmd);
  marks_cmd->callback([&] {
    action = [&] {
      const PipelineConfig config = marks_flags.Build();
      const SampleBuffer clean = Preprocess(LoadSignal(marks_in, config.sample_rate_hz), config.preprocess);
      const PitchMarks marks = DetectPitchMarks(clean, config.pitch);
      out << "# polarity " << PolarityName(marks.polarity_used) << '\n';
      for (std::size_t m : marks.mark_indices) out << m << '\n';
      return kExitOk;
    };
  });

  // features
  auto* feat = app.add_subcommand("features", "Print the 16 features: poc pot nec net c1..c12");
  std::string feat_in, feat_vowel = "a";
  PipelineFlags feat_flags;
  feat->add_option("input", feat_in, "Input signal (.wav or text)")->required();
  feat->add_option("--vowel", feat_vowel, "Vowel label (a,e,i,o,u)")->capture_default_str();
  feat_flags.Attach(feat);
  feat->callback([&] {
    action = [&] {
      const PipelineConfig config = feat_flags.Build();
      const auto values = ProcessFile(feat_in, ParseVowel(feat_vowel), config).AsArray();
      for (std::size_t i = 0; i < values.size(); ++i) out << (i ? " " : "") << FormatSig9(values[i]);
      out << '\n';
      return kExitOk;
    };
  });

  // enroll
  auto* enroll = app.add_subcommand("enroll", "Build speaker models from the train split of a manifest");
  std::string enroll_manifest, enroll_out;
  unsigned enroll_jobs = 0;
  PipelineFlags enroll_flags;
  enroll->add_option("--manifest", enroll_manifest, "CSV manifest (path,speaker_id,vowel,split)")->required();
  enroll->add_option("--out", enroll_out, "Model file to write")->required();
  enroll->add_option("--jobs", enroll_jobs, "Worker threads (0 = all cores)")->capture_default_str();
  enroll_flags.Attach(enroll);
  enroll->callback([&] {
    action = [&] {
      const PipelineConfig config = enroll_flags.Build();
      const auto entries = FilterSplit(LoadManifest(enroll_manifest), Split::kTrain);
      if (entries.empty()) throw Error(enroll_manifest + ": no train entries");
      const ModelSet models = RunTraining(entries, config, enroll_jobs,
                                          [&](const std::string& m) { err << "warning: " << m << '\n'; });
      SaveModels(models, enroll_out);
      out << "enrolled " << models.size() << " models from " << entries.size() << " utterances\n";
      return kExitOk;
    };
  });

  // identify
  auto* identify = app.add_subcommand("identify", "Closed-set identification with agree-or-reject fusion");
  std::string id_models, id_in, id_vowel;
  PipelineFlags id_flags;
  identify->add_option("--models", id_models, "Model file")->required();
  identify->add_option("--vowel", id_vowel, "Vowel label of the input (a,e,i,o,u)")->required();
  identify->add_option("input", id_in, "Input signal (.wav or text)")->required();
  id_flags.Attach(identify);
  identify->callback([&] {
    action = [&] {
      const PipelineConfig config = id_flags.Build();
      const DistanceReport report = ScoreFile(id_models, id_in, id_vowel, config);
      const VerificationOutcome outcome = IdentifyCombined(report);
      if (outcome.accepted()) {
        out << "accepted " << *outcome.speaker_id << '\n';
      } else {
        out << "rejected cepstral=" << report.argmin_cepstral << " temporal=" << report.argmin_temporal
            << '\n';
      }
      PrintDistanceTable(report, out);
      return kExitOk;
    };
  });

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Check an identity claim; exits 0 verified, 2 impostor, 3 retry");
  std::string ver_models, ver_in, ver_vowel, ver_claim;
  PipelineFlags ver_flags;
  verify->add_option("--models", ver_models, "Model file")->required();
  verify->add_option("--claim", ver_claim, "Claimed speaker id")->required();
  verify->add_option("--vowel", ver_vowel, "Vowel label of the input (a,e,i,o,u)")->required();
  verify->add_option("input", ver_in, "Input signal (.wav or text)")->required();
  ver_flags.Attach(verify);
  verify->callback([&] {
    action = [&] {
      const PipelineConfig config = ver_flags.Build();
      const DistanceReport report = ScoreFile(ver_models, ver_in, ver_vowel, config);
      const ClaimResult result = VerifyClaim(report, ver_claim);
      out << ClaimResultName(result) << '\n';
      switch (result) {
        case ClaimResult::kVerified: return kExitOk;
        case ClaimResult::kImpostor: return kExitImpostor;
        case ClaimResult::kRetry: return kExitRetry;
      }
      return kExitRetry;
    };
  });

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "Score the test split of a manifest and report accuracy");
  std::string ev_models, ev_manifest, ev_report;
  unsigned ev_jobs = 0;
  PipelineFlags ev_flags;
  evaluate->add_option("--models", ev_models, "Model file")->required();
  evaluate->add_option("--manifest", ev_manifest, "CSV manifest (path,speaker_id,vowel,split)")->required();
  evaluate->add_option("--report", ev_report, "Directory for report.csv and results.csv")->required();
  evaluate->add_option("--jobs", ev_jobs, "Worker threads (0 = all cores)")->capture_default_str();
  ev_flags.Attach(evaluate);
  evaluate->callback([&] {
    action = [&] {
      const PipelineConfig config = ev_flags.Build();
      const ModelSet models = LoadModels(ev_models);
      const auto entries = FilterSplit(LoadManifest(ev_manifest), Split::kTest);
      if (entries.empty()) throw Error(ev_manifest + ": no test entries");
      std::vector<UtteranceResult> details;
      const EvalReport report = RunEvaluation(
          entries, models, config, ev_jobs, [&](const std::string& m) { err << "warning: " << m << '\n'; },
          &details);
      fs::create_directories(ev_report);
      std::ofstream csv(fs::path(ev_report) / "report.csv");
      WriteReportCsv(report, csv);
      std::ofstream per(fs::path(ev_report) / "results.csv");
      per << "true_speaker,vowel,cepstral_nearest,temporal_nearest,outcome\n";
      for (const auto& r : details) {
        per << r.true_speaker << ',' << VowelLabel(r.vowel) << ',' << r.cepstral_nearest << ','
            << r.temporal_nearest << ',' << (r.combined.accepted() ? *r.combined.speaker_id : "rejected")
            << '\n';
      }
      if (!csv || !per) throw Error("cannot write report files under '" + ev_report + "'");
      PrintReportTables(report, out);
      return kExitOk;
    };
  });

  // synth
  auto* synth = app.add_subcommand("synth", "Generate synthetic vowels or a synthetic corpus");
  synth->require_subcommand(1);

  auto* synth_vowel = synth->add_subcommand("vowel", "Write one synthetic vowel as text samples");
  VowelSpec vspec;
  vspec.padding_s = 0.05;
  vspec.ramp_s = 0.02;
  std::string sv_out, sv_formants, sv_vowel = "a";
  synth_vowel->add_option("--out", sv_out, "Output text-sample file")->required();
  synth_vowel->add_option("--f0", vspec.f0_hz, "Fundamental frequency (Hz)")->capture_default_str();
  synth_vowel->add_option("--vowel", sv_vowel, "Reference formant set (a,e,i,o,u)")->capture_default_str();
  synth_vowel->add_option("--formants", sv_formants,
                          "Explicit formants as center:bandwidth,... (overrides --vowel)");
  synth_vowel->add_option("--duration", vspec.duration_s, "Voiced duration (s)")->capture_default_str();
  synth_vowel->add_option("--rate", vspec.sample_rate_hz, "Sample rate (Hz)")->capture_default_str();
  synth_vowel->add_option("--seed", vspec.seed, "Noise seed")->capture_default_str();
  synth_vowel->add_option("--noise", vspec.noise_level, "Noise std relative to the peak")->capture_default_str();
  synth_vowel->add_option("--padding", vspec.padding_s, "Silence before and after (s)")->capture_default_str();
  synth_vowel->add_option("--ramp", vspec.ramp_s, "Onset/offset ramp (s)")->capture_default_str();
  synth_vowel->callback([&] {
    action = [&] {
      vspec.formants = sv_formants.empty() ? ReferenceFormants(ParseVowel(sv_vowel)) : ParseFormants(sv_formants);
      const SynthesizedVowel v = SynthVowel(vspec);
      WriteTextSamples(v.buffer, sv_out);
      out << "period " << v.true_period << " samples\n";
      return kExitOk;
    };
  });

  auto* synth_corpus = synth->add_subcommand("corpus", "Write a synthetic multi-speaker corpus and manifest");
  CorpusSpec cspec;
  std::string sc_out;
  synth_corpus->add_option("--out", sc_out, "Output directory")->required();
  synth_corpus->add_option("--speakers", cspec.n_speakers, "Number of speakers (>= 2)")->capture_default_str();
  synth_corpus->add_option("--train", cspec.train_per_vowel, "Training utterances per vowel")->capture_default_str();
  synth_corpus->add_option("--test", cspec.test_per_vowel, "Test utterances per vowel")->capture_default_str();
  synth_corpus->add_option("--seed", cspec.seed, "Corpus seed")->capture_default_str();
  synth_corpus->add_option("--rate", cspec.sample_rate_hz, "Sample rate (Hz)")->capture_default_str();
  synth_corpus->add_option("--duration", cspec.duration_s, "Voiced duration (s)")->capture_default_str();
  synth_corpus->add_option("--f0-jitter", cspec.f0_jitter, "Max relative F0 jitter")->capture_default_str();
  synth_corpus->add_option("--formant-jitter", cspec.formant_jitter, "Max relative formant jitter")
      ->capture_default_str();
  synth_corpus->add_option("--noise", cspec.noise_level, "Noise std relative to the peak")->capture_default_str();
  synth_corpus->callback([&] {
    action = [&] {
      const auto entries = MakeSyntheticCorpus(cspec, sc_out);
      out << "wrote " << entries.size() << " utterances and " << (fs::path(sc_out) / "manifest.csv").string()
          << '\n';
      return kExitOk;
    };
  });

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());  // CLI11 consumes a reversed vector
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    return action ? action() : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace psv::cli
