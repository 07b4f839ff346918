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

#ifndef PSV_FEATURES_H_
#define PSV_FEATURES_H_

#include <array>
#include <cstddef>
#include <vector>

#include "psv/lpc.h"
#include "psv/pitch.h"
#include "psv/types.h"

namespace psv {

struct ExtremaCounts {
  int poc = 0;  // positive crest
  int pot = 0;  // positive trough
  int nec = 0;  // negative crest
  int net = 0;  // negative trough

  friend bool operator==(const ExtremaCounts&, const ExtremaCounts&) = default;
};

struct TemporalFeatures {
  double poc = 0.0;
  double pot = 0.0;
  double nec = 0.0;
  double net = 0.0;

  friend bool operator==(const TemporalFeatures&, const TemporalFeatures&) = default;
};

// Contiguous run of pitch periods around the one holding the amplitude peak.
struct SteadyStateRegion {
  std::vector<Period> periods;
  std::size_t first_period = 0;       // index into the full period list
  std::size_t peak_period_index = 0;  // index into the full period list
};

struct UtteranceFeatures {
  TemporalFeatures temporal;
  CepstralVector cepstral{};
  Vowel vowel = Vowel::kA;

  // [poc, pot, nec, net, c1 .. c12]
  std::array<double, kNumFeatures> AsArray() const;
  static UtteranceFeatures FromArray(const std::array<double, kNumFeatures>& values, Vowel vowel);

  friend bool operator==(const UtteranceFeatures&, const UtteranceFeatures&) = default;
};

struct FeatureOptions {
  std::size_t periods_before = 10;  // region is [p - before, p + after]
  std::size_t periods_after = 9;
  std::size_t max_cepstral_frames = 18;
  std::size_t lpc_order = 12;
};

// Throws with fewer than 3 periods. A peak outside every period is assigned
// to the nearest one.
SteadyStateRegion SelectSteadyState(const SampleBuffer& buffer, const std::vector<Period>& periods,
                                    const FeatureOptions& options = {});

// Slides a 3-sample window across the period one sample at a time. A strict
// local maximum counts as a crest, a strict local minimum as a trough; the
// sign of the centre sample (> 0 positive, otherwise negative) picks the pair.
ExtremaCounts CountExtrema(const SampleBuffer& buffer, const Period& period);

TemporalFeatures ComputeTemporalFeatures(const SampleBuffer& buffer,
                                         const SteadyStateRegion& region);

// Frames of three consecutive periods, advanced one period at a time, at most
// `max_cepstral_frames` of them; the per-frame cepstra are averaged.
CepstralVector PitchSynchronousCepstra(const SampleBuffer& buffer, const SteadyStateRegion& region,
                                       const FeatureOptions& options = {});

UtteranceFeatures ExtractUtteranceFeatures(const SampleBuffer& buffer, const PitchMarks& marks,
                                           Vowel vowel, const FeatureOptions& options = {});

}  // namespace psv

#endif  // PSV_FEATURES_H_
