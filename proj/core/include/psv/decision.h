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

#ifndef PSV_DECISION_H_
#define PSV_DECISION_H_

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psv/features.h"
#include "psv/modeling.h"

namespace psv {

// Classical Tokhura weights for c1..c12.
inline constexpr std::array<double, kNumCepstra> kTokhuraWeights = {
    1.0, 3.0, 7.0, 13.0, 19.0, 22.0, 25.0, 33.0, 42.0, 50.0, 56.0, 61.0};

struct DistanceWeights {
  std::array<double, kNumCepstra> cepstral = kTokhuraWeights;
  std::array<double, kNumTemporal> temporal = {1.0, 1.0, 1.0, 1.0};

  // Throws unless every weight is positive and finite.
  void Validate() const;
};

// sum_i w_i (x_i - y_i)^2. Throws on a length mismatch.
double WeightedDistance(std::span<const double> x, std::span<const double> y,
                        std::span<const double> w);

struct SpeakerDistance {
  std::string speaker_id;
  double cepstral = 0.0;
  double temporal = 0.0;
};

struct DistanceReport {
  std::vector<SpeakerDistance> rows;  // sorted by speaker id
  std::string argmin_cepstral;
  std::string argmin_temporal;
};

// Sorts the rows by speaker id and fills in both argmins; ties go to the
// lexicographically smallest id. Throws on an empty table.
DistanceReport MakeDistanceReport(std::vector<SpeakerDistance> rows);

// Scores against every enrolled speaker that has a model for f.vowel.
DistanceReport ScoreAgainstModels(const UtteranceFeatures& f, const ModelSet& set,
                                  const DistanceWeights& weights = {});

struct VerificationOutcome {
  enum class Kind { kAccepted, kRejected };
  Kind kind = Kind::kRejected;
  std::optional<std::string> speaker_id;  // set iff accepted

  bool accepted() const { return kind == Kind::kAccepted; }
  static VerificationOutcome Accepted(std::string id) { return {Kind::kAccepted, std::move(id)}; }
  static VerificationOutcome Rejected() { return {Kind::kRejected, std::nullopt}; }
};

// Accepted only when the cepstral and temporal nearest speakers coincide.
VerificationOutcome IdentifyCombined(const DistanceReport& report);

enum class ClaimResult { kVerified, kImpostor, kRetry };

std::string_view ClaimResultName(ClaimResult r);

// Throws if `claimed` does not appear in the report.
ClaimResult VerifyClaim(const DistanceReport& report, const std::string& claimed);

}  // namespace psv

#endif  // PSV_DECISION_H_
