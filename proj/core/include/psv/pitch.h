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

#ifndef PSV_PITCH_H_
#define PSV_PITCH_H_

#include <cstddef>
#include <vector>

#include "psv/types.h"

namespace psv {

// The extremum of one maximal run of strictly positive (or strictly negative)
// samples, together with its maximum peak difference (MPD) against the
// neighbouring halves of the same polarity.
struct HalfPeak {
  Polarity polarity = Polarity::kPositive;
  std::size_t start = 0;  // first sample of the half
  std::size_t end = 0;    // one past the last sample
  std::size_t peak_index = 0;
  double peak_value = 0.0;
  double mpd = 0.0;
};

// Per-polarity MPD statistics. AMPV is the mean MPD.
struct PitchStats {
  double ampv_pos = 0.0;
  double ampv_neg = 0.0;
  double max_mpd_pos = 0.0;
  double max_mpd_neg = 0.0;
  double std_mpd_pos = 0.0;
  double std_mpd_neg = 0.0;

  double ampv(Polarity p) const { return p == Polarity::kPositive ? ampv_pos : ampv_neg; }
  double max_mpd(Polarity p) const {
    return p == Polarity::kPositive ? max_mpd_pos : max_mpd_neg;
  }
};

struct PitchMarks {
  std::vector<std::size_t> mark_indices;  // strictly increasing
  Polarity polarity_used = Polarity::kPositive;
};

struct Period {
  std::size_t start = 0;
  std::size_t length = 0;

  friend bool operator==(const Period&, const Period&) = default;
};

struct PitchOptions {
  double min_f0_hz = 50.0;
  double max_f0_hz = 500.0;
};

// Halves are in time order, both polarities interleaved. Zero samples belong
// to no half. Throws if either polarity is absent.
std::vector<HalfPeak> ExtractHalfPeaks(const SampleBuffer& buffer);

PitchStats ComputePitchStats(const std::vector<HalfPeak>& peaks);

// The polarity whose MPDs have the smaller coefficient of variation. Ties and
// zero-mean cases resolve to positive.
Polarity ChoosePolarity(const PitchStats& stats);

// Percentage x in [1, 20] used to derive the marking threshold from a peak.
int ThresholdPercent(const HalfPeak& peak, const PitchStats& stats);

// peak_value - (x / 100) * peak_value. Compared by magnitude.
double ThresholdForPeak(const HalfPeak& peak, const PitchStats& stats);

// Scans the chosen polarity's halves in time order. Each mark sits on the
// peak of the first half, after the previous mark, whose magnitude reaches the
// threshold derived from the previously marked half. Candidates closer than
// `min_period` to the previous mark are skipped. When no candidate appears
// within `max_period`, the chain is restarted at the largest half of the next
// `max_period` window; the longest chain is returned.
PitchMarks MarkPitchPeriods(const SampleBuffer& buffer, const std::vector<HalfPeak>& peaks,
                            const PitchStats& stats, Polarity polarity,
                            std::size_t min_period, std::size_t max_period);

std::vector<Period> PeriodsFromMarks(const PitchMarks& marks);

// Half-peak inventory, statistics, polarity choice and marking in one call.
// Period bounds are derived from the F0 range and the buffer's rate.
PitchMarks DetectPitchMarks(const SampleBuffer& buffer, const PitchOptions& options = {});

}  // namespace psv

#endif  // PSV_PITCH_H_
