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

#include "psv/decision.h"

#include <algorithm>
#include <cmath>

#include "psv/error.h"

namespace psv {

void DistanceWeights::Validate() const {
  auto ok = [](double w) { return w > 0.0 && std::isfinite(w); };
  if (!std::all_of(cepstral.begin(), cepstral.end(), ok) ||
      !std::all_of(temporal.begin(), temporal.end(), ok)) {
    throw Error("distance weights must be positive and finite");
  }
}

double WeightedDistance(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w) {
  if (x.size() != y.size() || x.size() != w.size()) {
    throw Error("weighted distance: length mismatch (" + std::to_string(x.size()) + ", " +
                std::to_string(y.size()) + ", " + std::to_string(w.size()) + ")");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double diff = x[i] - y[i];
    d += w[i] * diff * diff;
  }
  return d;
}

DistanceReport MakeDistanceReport(std::vector<SpeakerDistance> rows) {
  if (rows.empty()) throw Error("distance report needs at least one speaker");
  std::sort(rows.begin(), rows.end(),
            [](const SpeakerDistance& a, const SpeakerDistance& b) { return a.speaker_id < b.speaker_id; });
  // Rows are sorted, so a strict '<' keeps the smallest id among ties.
  std::size_t best_cep = 0;
  std::size_t best_tmp = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].cepstral < rows[best_cep].cepstral) best_cep = i;
    if (rows[i].temporal < rows[best_tmp].temporal) best_tmp = i;
  }
  DistanceReport report;
  report.argmin_cepstral = rows[best_cep].speaker_id;
  report.argmin_temporal = rows[best_tmp].speaker_id;
  report.rows = std::move(rows);
  return report;
}

DistanceReport ScoreAgainstModels(const UtteranceFeatures& f, const ModelSet& set,
                                  const DistanceWeights& weights) {
  const auto models = set.ModelsForVowel(f.vowel);
  if (models.empty()) {
    throw Error(std::string("no enrolled model for vowel /") + VowelLabel(f.vowel) + "/");
  }
  const auto probe = f.AsArray();
  const std::span<const double> probe_temporal(probe.data(), kNumTemporal);
  const std::span<const double> probe_cepstral(probe.data() + kNumTemporal, kNumCepstra);

  std::vector<SpeakerDistance> rows;
  rows.reserve(models.size());
  for (const SpeakerModel* m : models) {
    const std::span<const double> mt(m->mean_features.data(), kNumTemporal);
    const std::span<const double> mc(m->mean_features.data() + kNumTemporal, kNumCepstra);
    rows.push_back({m->speaker_id, WeightedDistance(probe_cepstral, mc, weights.cepstral),
                    WeightedDistance(probe_temporal, mt, weights.temporal)});
  }
  return MakeDistanceReport(std::move(rows));
}

VerificationOutcome IdentifyCombined(const DistanceReport& report) {
  if (report.argmin_cepstral == report.argmin_temporal) {
    return VerificationOutcome::Accepted(report.argmin_cepstral);
  }
  return VerificationOutcome::Rejected();
}

std::string_view ClaimResultName(ClaimResult r) {
  switch (r) {
    case ClaimResult::kVerified: return "verified";
    case ClaimResult::kImpostor: return "impostor";
    case ClaimResult::kRetry: return "retry";
  }
  return "retry";
}

ClaimResult VerifyClaim(const DistanceReport& report, const std::string& claimed) {
  const bool enrolled = std::any_of(report.rows.begin(), report.rows.end(),
                                    [&](const SpeakerDistance& r) { return r.speaker_id == claimed; });
  if (!enrolled) throw Error("claimed speaker '" + claimed + "' is not enrolled for this vowel");
  const VerificationOutcome outcome = IdentifyCombined(report);
  if (!outcome.accepted()) return ClaimResult::kRetry;
  return *outcome.speaker_id == claimed ? ClaimResult::kVerified : ClaimResult::kImpostor;
}

}  // namespace psv
