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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "psv/decision.h"
#include "psv/evaluation.h"
#include "psv/features.h"
#include "psv/lpc.h"
#include "psv/modeling.h"
#include "psv/pipeline.h"
#include "psv/pitch.h"
#include "psv/preprocess.h"
#include "psv/signal_io.h"
#include "psv/synth.h"
#include "test_util.h"

namespace psv {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// --- report arithmetic ---------------------------------------------------

Verdict ReportArithmetic() {
  struct Row {
    Vowel vowel;
    int rejected, correct, wrong;
    double percent;
  };
  const Row rows[] = {{Vowel::kA, 77, 17, 6, 73.91},
                      {Vowel::kE, 66, 33, 1, 97.05},
                      {Vowel::kO, 77, 19, 4, 82.60},
                      {Vowel::kU, 79, 21, 0, 100.0},
                      {Vowel::kI, 67, 32, 1, 96.97}};
  std::vector<UtteranceResult> results;
  auto add = [&](Vowel v, const std::string& cep, const std::string& tem) {
    UtteranceResult r;
    r.true_speaker = "S1";
    r.vowel = v;
    r.cepstral_nearest = cep;
    r.temporal_nearest = tem;
    r.combined = IdentifyCombined(MakeDistanceReport(
        {{"S1", cep == "S1" ? 0.0 : 1.0, tem == "S1" ? 0.0 : 1.0},
         {"S2", cep == "S2" ? 0.0 : 1.0, tem == "S2" ? 0.0 : 1.0}}));
    results.push_back(r);
  };
  for (const Row& row : rows) {
    for (int i = 0; i < row.rejected; ++i) add(row.vowel, "S1", "S2");
    for (int i = 0; i < row.correct; ++i) add(row.vowel, "S1", "S1");
    for (int i = 0; i < row.wrong; ++i) add(row.vowel, "S2", "S2");
  }
  const EvalReport report = AggregateResults(results);

  Verdict v;
  v.Require(report.combined.total == 500, "total != 500");
  v.Require(report.combined.accepted == 134, "accepted != 134");
  v.Require(report.combined.correct == 122, "correct != 122");
  const double combined = report.combined.accuracy_percent().value_or(-1.0);
  v.Require(std::abs(combined - 91.04) <= 0.01, "combined accuracy " + Fixed(combined, 4));
  std::string per;
  for (const Row& row : rows) {
    const SystemRow& r = report.per_vowel[static_cast<std::size_t>(row.vowel)];
    const double acc = r.accuracy_percent().value_or(-1.0);
    v.Require(r.rejected == static_cast<std::size_t>(row.rejected), "per-vowel rejected count");
    v.Require(std::abs(acc - row.percent) <= 0.01,
              std::string("/") + VowelLabel(row.vowel) + "/ accuracy " + Fixed(acc, 4));
    per += std::string(per.empty() ? "" : " ") + VowelLabel(row.vowel) + "=" + Fixed(acc, 4);
  }
  if (v.pass) {
    v.detail = "accepted " + std::to_string(report.combined.accepted) + ", correct " +
               std::to_string(report.combined.correct) + ", " + Fixed(combined, 4) + "%; " + per;
  }
  return v;
}

// --- pitch accuracy ------------------------------------------------------

Verdict PitchAccuracy() {
  Verdict v;
  double worst_fraction = 1.0;
  double worst_seconds = 0.0;
  for (Vowel vowel : kAllVowels) {
    for (double f0 : {80.0, 120.0, 160.0, 220.0, 300.0}) {
      VowelSpec spec;
      spec.f0_hz = f0;
      spec.formants = ReferenceFormants(vowel);
      spec.duration_s = 1.0;
      spec.noise_level = 0.002;
      spec.padding_s = 0.05;
      spec.ramp_s = 0.02;
      spec.seed = 7;
      const SynthesizedVowel s = SynthVowel(spec);
      const std::string label = std::string("/") + VowelLabel(vowel) + "/ f0=" + Fixed(f0, 0);

      const auto start = Clock::now();
      std::vector<Period> periods;
      try {
        periods = PeriodsFromMarks(DetectPitchMarks(Preprocess(s.buffer)));
      } catch (const std::exception& e) {
        v.Require(false, label + ": " + e.what());
        continue;
      }
      const double seconds = Seconds(start);

      std::size_t within = 0;
      for (const Period& p : periods) {
        within += p.length + 1 >= s.true_period && p.length <= s.true_period + 1;
      }
      const double fraction =
          periods.empty() ? 0.0 : static_cast<double>(within) / static_cast<double>(periods.size());
      worst_fraction = std::min(worst_fraction, fraction);
      worst_seconds = std::max(worst_seconds, seconds);
      v.Require(fraction >= 0.95, label + ": only " + Fixed(100.0 * fraction, 1) + "% within 1 sample");
      v.Require(seconds < 1.0, label + ": took " + Fixed(seconds, 3) + " s");
    }
  }
  if (v.pass) {
    v.detail = "25 utterances, worst " + Fixed(100.0 * worst_fraction, 1) +
               "% of periods within 1 sample, slowest " + Fixed(1000.0 * worst_seconds, 1) + " ms";
  }
  return v;
}

// --- LPC and cepstral oracles --------------------------------------------

Verdict LevinsonOracle() {
  Verdict v;
  std::mt19937_64 rng(20240611);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto r = oracle::RandomAutocorrelation(rng, 12);
    const LpcResult res = LevinsonDurbin(r, 12);
    const auto direct = oracle::ToeplitzSolve(r, 12);
    double diff = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < 12; ++i) {
      diff += (res.a[i] - direct[i]) * (res.a[i] - direct[i]);
      norm += direct[i] * direct[i];
    }
    const double rel = std::sqrt(diff) / std::max(std::sqrt(norm), 1e-300);
    worst = std::max(worst, rel);
    v.Require(rel <= 1e-9, "trial " + std::to_string(t) + ": relative error " + std::to_string(rel));
    for (std::size_t i = 1; i < res.residuals.size(); ++i) {
      v.Require(res.residuals[i] <= res.residuals[i - 1], "residuals increase in trial " + std::to_string(t));
    }
    v.Require(res.residuals.size() == 13 && res.residuals.back() > 0.0,
              "final residual not positive in trial " + std::to_string(t));
  }
  if (v.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "100 order-12 systems, max relative error %.3g", worst);
    v.detail = buf;
  }
  return v;
}

Verdict CepstralOracle() {
  Verdict v;
  std::mt19937_64 rng(5150);
  double worst = 0.0;
  for (int t = 0; t < 25; ++t) {
    const auto a = oracle::RandomStablePredictor(rng, 6, 0.95);
    const CepstralVector c = LpcToCepstral(a);
    const auto want = oracle::SpectralCepstrum(a, 12);
    for (std::size_t n = 0; n < 12; ++n) {
      const double err = std::abs(c[n] - want[n]);
      worst = std::max(worst, err);
      v.Require(err <= 1e-6, "predictor " + std::to_string(t) + " c" + std::to_string(n + 1));
    }
  }
  if (v.pass) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "25 stable predictors, max abs error %.3g", worst);
    v.detail = buf;
  }
  return v;
}

// --- extrema oracle ------------------------------------------------------

Verdict ExtremaOracle() {
  Verdict v;
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<std::size_t> length(3, 500);
  std::uniform_int_distribution<int> small(-2, 2);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 1000; ++t) {
    std::vector<double> x(length(rng));
    // Alternate continuous values with small integers that produce ties and zeros.
    for (double& s : x) s = t % 2 == 0 ? gauss(rng) : static_cast<double>(small(rng));
    const SampleBuffer buffer(x, kDefaultSampleRateHz);
    const ExtremaCounts got = CountExtrema(buffer, {0, x.size()});
    v.Require(got == oracle::BruteForceExtrema(x),
              "sequence " + std::to_string(t) + " (length " + std::to_string(x.size()) + ")");
  }
  if (v.pass) v.detail = "1000 sequences of length 3-500 match exactly";
  return v;
}

// --- fusion logic --------------------------------------------------------

bool FusionAgrees(const std::vector<std::string>& ids, const std::vector<double>& cep,
                  const std::vector<double>& tem) {
  std::vector<SpeakerDistance> rows;
  for (std::size_t i = 0; i < ids.size(); ++i) rows.push_back({ids[i], cep[i], tem[i]});
  const DistanceReport report = MakeDistanceReport(rows);
  const std::string want_cep = oracle::BruteForceArgmin(ids, cep);
  const std::string want_tem = oracle::BruteForceArgmin(ids, tem);
  if (report.argmin_cepstral != want_cep || report.argmin_temporal != want_tem) return false;
  const VerificationOutcome outcome = IdentifyCombined(report);
  if (outcome.accepted() != (want_cep == want_tem)) return false;
  if (outcome.accepted() && outcome.speaker_id != want_cep) return false;
  if (!outcome.accepted() && outcome.speaker_id.has_value()) return false;
  return true;
}

std::vector<std::string> ShuffledIds(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("S" + std::to_string(i + 1));
  std::shuffle(ids.begin(), ids.end(), rng);
  return ids;
}

Verdict FusionLogic() {
  Verdict v;
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<std::size_t> speakers(2, 4);
  std::uniform_int_distribution<int> coarse(0, 3);
  std::uniform_real_distribution<double> fine(0.0, 10.0);
  std::size_t accepted = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto ids = ShuffledIds(speakers(rng), rng);
    std::vector<double> cep(ids.size()), tem(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
      // Half the tables use coarse integer distances so that ties are common.
      cep[i] = t % 2 ? coarse(rng) : fine(rng);
      tem[i] = t % 2 ? coarse(rng) : fine(rng);
    }
    v.Require(FusionAgrees(ids, cep, tem), "random table " + std::to_string(t));
    accepted += oracle::BruteForceArgmin(ids, cep) == oracle::BruteForceArgmin(ids, tem);
  }

  // Every table with distances in {0, 1, 2} for 2, 3 and 4 speakers.
  std::size_t exhaustive = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto ids = ShuffledIds(n, rng);
    std::size_t combos = 1;
    for (std::size_t i = 0; i < 2 * n; ++i) combos *= 3;
    for (std::size_t code = 0; code < combos; ++code) {
      std::vector<double> cep(n), tem(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) cep[i] = static_cast<double>(c % 3);
      for (std::size_t i = 0; i < n; ++i, c /= 3) tem[i] = static_cast<double>(c % 3);
      v.Require(FusionAgrees(ids, cep, tem), "exhaustive table " + std::to_string(code) +
                                                 " with " + std::to_string(n) + " speakers");
      ++exhaustive;
    }
  }
  if (v.pass) {
    v.detail = "10000 random tables (" + std::to_string(accepted) + " accepted) and " +
               std::to_string(exhaustive) + " exhaustive tables for 2-4 speakers";
  }
  return v;
}

// --- end-to-end study and determinism ------------------------------------

struct Study {
  std::vector<ManifestEntry> entries;
  ModelSet models;
  EvalReport report;
  std::vector<UtteranceResult> details;
  double seconds = 0.0;
};

Study RunStudy(const std::filesystem::path& dir) {
  Study s;
  const auto start = Clock::now();
  s.entries = MakeSyntheticCorpus(CorpusSpec{}, dir);
  const PipelineConfig config;
  s.models = RunTraining(FilterSplit(s.entries, Split::kTrain), config);
  s.report = RunEvaluation(FilterSplit(s.entries, Split::kTest), s.models, config, 0, {}, &s.details);
  s.seconds = Seconds(start);
  return s;
}

Verdict EndToEnd(const Study& s) {
  Verdict v;
  const double cep = s.report.cepstral.accuracy_percent().value_or(0.0);
  const double tem = s.report.temporal.accuracy_percent().value_or(0.0);
  const auto combined = s.report.combined.accuracy_percent();
  v.Require(s.report.combined.total == 250, "expected 250 test utterances, got " +
                                                std::to_string(s.report.combined.total));
  v.Require(s.report.failed == 0, std::to_string(s.report.failed) + " test files failed");
  v.Require(combined.has_value(), "no utterance accepted");
  v.Require(combined.value_or(0.0) >= cep, "combined below cepstral-only");
  v.Require(combined.value_or(0.0) >= tem, "combined below temporal-only");
  v.Require(s.seconds <= 120.0, "run took " + Fixed(s.seconds, 1) + " s");
  const std::string numbers = "combined " + Fixed(combined.value_or(0.0)) + "% (" +
                              std::to_string(s.report.combined.correct) + "/" +
                              std::to_string(s.report.combined.accepted) + "), cepstral " +
                              Fixed(cep) + "%, temporal " + Fixed(tem) + "%, " + Fixed(s.seconds, 1) + " s";
  v.detail = v.pass ? numbers : v.detail + "; " + numbers;
  return v;
}

std::string CsvOf(const EvalReport& r) {
  std::ostringstream out;
  WriteReportCsv(r, out);
  return out.str();
}

Verdict Determinism(const Study& s, const std::filesystem::path& dir) {
  Verdict v;
  const PipelineConfig config;

  SaveModels(s.models, dir / "models.txt");
  const ModelSet loaded = LoadModels(dir / "models.txt");
  double worst = 0.0;
  v.Require(loaded.size() == s.models.size(), "model count changed after reload");
  for (const auto& [key, m] : s.models.models()) {
    const SpeakerModel* back = loaded.Find(key.first, key.second);
    if (back == nullptr) {
      v.Require(false, "model missing after reload");
      continue;
    }
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      worst = std::max(worst, std::abs(back->mean_features[i] - m.mean_features[i]));
    }
  }
  v.Require(worst <= 1e-9, "model round trip error " + std::to_string(worst));

  const auto test = FilterSplit(s.entries, Split::kTest);
  std::vector<UtteranceResult> rerun;
  const EvalReport again = RunEvaluation(test, s.models, config, 1, {}, &rerun);
  v.Require(CsvOf(again) == CsvOf(s.report), "evaluation report differs between runs");
  for (std::size_t i = 0; i < rerun.size() && i < s.details.size(); ++i) {
    v.Require(rerun[i].cepstral_nearest == s.details[i].cepstral_nearest &&
                  rerun[i].temporal_nearest == s.details[i].temporal_nearest,
              "per-utterance decision differs between runs");
  }

  std::size_t scaled_checks = 0;
  for (const ManifestEntry& e : test) {
    const SampleBuffer raw = LoadSignal(e.path, config.sample_rate_hz);
    const UtteranceFeatures base = ProcessUtterance(raw, e.vowel, config);
    const UtteranceFeatures repeat = ProcessUtterance(raw, e.vowel, config);
    v.Require(base == repeat, "pipeline not bit-identical on " + e.path.string());
    const DistanceReport base_scores = ScoreAgainstModels(base, s.models, config.weights);
    for (double gain : {0.5, 3.0, 7.3}) {
      std::vector<double> scaled(raw.data());
      for (double& x : scaled) x *= gain;
      const UtteranceFeatures f =
          ProcessUtterance(SampleBuffer(std::move(scaled), raw.sample_rate_hz()), e.vowel, config);
      v.Require(f.temporal == base.temporal, "temporal features change with gain " + Fixed(gain, 1) +
                                                 " on " + e.path.string());
      const DistanceReport scores = ScoreAgainstModels(f, s.models, config.weights);
      v.Require(scores.argmin_cepstral == base_scores.argmin_cepstral &&
                    scores.argmin_temporal == base_scores.argmin_temporal,
                "argmin changes with gain " + Fixed(gain, 1) + " on " + e.path.string());
      ++scaled_checks;
    }
  }
  if (v.pass) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "round trip max error %.3g, reruns identical, %zu scaled utterances invariant", worst,
                  scaled_checks);
    v.detail = buf;
  }
  return v;
}

int Run() {
  int failures = 0;
  auto report = [&](const char* id, const char* name, const std::function<Verdict()>& check) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s %s %s: %s\n", v.pass ? "PASS" : "FAIL", id, name, v.detail.c_str());
    std::fflush(stdout);
    failures += v.pass ? 0 : 1;
  };

  report("AC1", "report arithmetic", ReportArithmetic);
  report("AC2", "pitch accuracy", PitchAccuracy);
  report("AC3", "Levinson-Durbin oracle", LevinsonOracle);
  report("AC4", "cepstral oracle", CepstralOracle);
  report("AC5", "extrema oracle", ExtremaOracle);
  report("AC6", "fusion logic", FusionLogic);

  testing::TempDir dir;
  std::optional<Study> study;
  report("AC7", "end-to-end synthetic study", [&] {
    study = RunStudy(dir / "corpus");
    return EndToEnd(*study);
  });
  report("AC8", "determinism and round trips", [&] {
    if (!study) throw std::runtime_error("end-to-end study did not run");
    return Determinism(*study, dir.path());
  });

  std::printf("%d of 8 criteria passed\n", 8 - failures);
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

}  // namespace
}  // namespace psv

int main() { return psv::Run(); }
