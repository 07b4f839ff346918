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

#include "psv/pitch.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "psv/error.h"

namespace psv {
namespace {

struct MpdSummary {
  double mean = 0.0;
  double max = 0.0;
  double stddev = 0.0;
  std::size_t count = 0;
};

MpdSummary Summarize(const std::vector<HalfPeak>& peaks, Polarity p) {
  MpdSummary s;
  double sum = 0.0;
  for (const auto& h : peaks) {
    if (h.polarity != p) continue;
    sum += h.mpd;
    s.max = s.count == 0 ? h.mpd : std::max(s.max, h.mpd);
    ++s.count;
  }
  if (s.count == 0) return s;
  s.mean = sum / static_cast<double>(s.count);
  double var = 0.0;
  for (const auto& h : peaks) {
    if (h.polarity == p) var += (h.mpd - s.mean) * (h.mpd - s.mean);
  }
  s.stddev = std::sqrt(var / static_cast<double>(s.count));
  return s;
}

// MPD against the previous and next half of the same polarity; a missing
// neighbour contributes 0.
void AssignMpd(std::vector<HalfPeak>& peaks, Polarity p) {
  std::vector<HalfPeak*> same;
  for (auto& h : peaks) {
    if (h.polarity == p) same.push_back(&h);
  }
  for (std::size_t i = 0; i < same.size(); ++i) {
    double mpd = 0.0;
    if (i > 0) mpd = std::max(mpd, std::abs(same[i]->peak_value - same[i - 1]->peak_value));
    if (i + 1 < same.size()) {
      mpd = std::max(mpd, std::abs(same[i]->peak_value - same[i + 1]->peak_value));
    }
    same[i]->mpd = mpd;
  }
}

}  // namespace

std::vector<HalfPeak> ExtractHalfPeaks(const SampleBuffer& buffer) {
  const auto x = buffer.samples();
  std::vector<HalfPeak> peaks;
  std::size_t i = 0;
  while (i < x.size()) {
    if (x[i] == 0.0) {
      ++i;
      continue;
    }
    const bool positive = x[i] > 0.0;
    HalfPeak h;
    h.polarity = positive ? Polarity::kPositive : Polarity::kNegative;
    h.start = i;
    h.peak_index = i;
    h.peak_value = x[i];
    while (i < x.size() && (positive ? x[i] > 0.0 : x[i] < 0.0)) {
      if (std::abs(x[i]) > std::abs(h.peak_value)) {
        h.peak_index = i;
        h.peak_value = x[i];
      }
      ++i;
    }
    h.end = i;
    peaks.push_back(h);
  }

  const bool has_pos = std::any_of(peaks.begin(), peaks.end(),
                                   [](const HalfPeak& h) { return h.polarity == Polarity::kPositive; });
  const bool has_neg = std::any_of(peaks.begin(), peaks.end(),
                                   [](const HalfPeak& h) { return h.polarity == Polarity::kNegative; });
  if (!has_pos || !has_neg) throw Error("unvoiced or degenerate signal: no sign change");

  AssignMpd(peaks, Polarity::kPositive);
  AssignMpd(peaks, Polarity::kNegative);
  return peaks;
}

PitchStats ComputePitchStats(const std::vector<HalfPeak>& peaks) {
  const MpdSummary pos = Summarize(peaks, Polarity::kPositive);
  const MpdSummary neg = Summarize(peaks, Polarity::kNegative);
  if (pos.count == 0) throw Error("pitch statistics: no positive halves");
  if (neg.count == 0) throw Error("pitch statistics: no negative halves");
  PitchStats s;
  s.ampv_pos = pos.mean;
  s.ampv_neg = neg.mean;
  s.max_mpd_pos = pos.max;
  s.max_mpd_neg = neg.max;
  s.std_mpd_pos = pos.stddev;
  s.std_mpd_neg = neg.stddev;
  return s;
}

Polarity ChoosePolarity(const PitchStats& stats) {
  if (stats.ampv_pos <= 0.0 || stats.ampv_neg <= 0.0) return Polarity::kPositive;
  const double cv_pos = stats.std_mpd_pos / stats.ampv_pos;
  const double cv_neg = stats.std_mpd_neg / stats.ampv_neg;
  return cv_neg < cv_pos ? Polarity::kNegative : Polarity::kPositive;
}

int ThresholdPercent(const HalfPeak& peak, const PitchStats& stats) {
  const double ampv = stats.ampv(peak.polarity);
  const double top = stats.max_mpd(peak.polarity);
  // Ten equal intervals over [0, AMPV] give x = 1..10, ten over (AMPV, max]
  // give x = 11..20. The last interval of each range is closed above.
  auto interval = [](double offset, double width) {
    const double t = std::floor(10.0 * offset / width);
    return static_cast<int>(std::clamp(t, 0.0, 9.0)) + 1;
  };
  if (peak.mpd <= ampv) {
    if (ampv <= 0.0) return 1;
    return interval(peak.mpd, ampv);
  }
  if (top <= ampv) return 20;
  return 10 + interval(peak.mpd - ampv, top - ampv);
}

double ThresholdForPeak(const HalfPeak& peak, const PitchStats& stats) {
  const double x = ThresholdPercent(peak, stats);
  return peak.peak_value - (x / 100.0) * peak.peak_value;
}

PitchMarks MarkPitchPeriods(const SampleBuffer& buffer, const std::vector<HalfPeak>& peaks,
                            const PitchStats& stats, Polarity polarity, std::size_t min_period,
                            std::size_t max_period) {
  if (min_period == 0 || min_period >= max_period) {
    throw Error("pitch period bounds must satisfy 0 < min < max");
  }
  std::vector<const HalfPeak*> halves;
  for (const auto& h : peaks) {
    if (h.polarity == polarity && h.peak_index < buffer.size()) halves.push_back(&h);
  }
  if (halves.size() < 2) throw Error("pitch not detected: fewer than two halves");

  const std::size_t n = halves.size();
  std::vector<std::size_t> best;
  std::size_t i = 0;
  while (i < n) {
    // Anchor each chain on the strongest half of the opening window.
    std::size_t anchor = i;
    for (std::size_t j = i; j < n && halves[j]->peak_index < halves[i]->peak_index + max_period; ++j) {
      if (std::abs(halves[j]->peak_value) > std::abs(halves[anchor]->peak_value)) anchor = j;
    }

    std::vector<std::size_t> chain{halves[anchor]->peak_index};
    std::size_t prev = anchor;
    double threshold = std::abs(ThresholdForPeak(*halves[prev], stats));
    std::size_t j = anchor + 1;
    for (; j < n; ++j) {
      const std::size_t gap = halves[j]->peak_index - halves[prev]->peak_index;
      if (gap > max_period) break;
      if (gap < min_period) continue;
      if (std::abs(halves[j]->peak_value) >= threshold) {
        chain.push_back(halves[j]->peak_index);
        prev = j;
        threshold = std::abs(ThresholdForPeak(*halves[prev], stats));
      }
    }
    if (chain.size() > best.size()) best = std::move(chain);
    i = j;
  }

  if (best.size() < 2) throw Error("pitch not detected");
  return PitchMarks{std::move(best), polarity};
}

std::vector<Period> PeriodsFromMarks(const PitchMarks& marks) {
  const auto& m = marks.mark_indices;
  if (m.size() < 2) throw Error("need at least two pitch marks, got " + std::to_string(m.size()));
  std::vector<Period> periods;
  periods.reserve(m.size() - 1);
  for (std::size_t i = 0; i + 1 < m.size(); ++i) {
    if (m[i + 1] <= m[i]) throw Error("pitch marks are not strictly increasing");
    periods.push_back({m[i], m[i + 1] - m[i]});
  }
  return periods;
}

PitchMarks DetectPitchMarks(const SampleBuffer& buffer, const PitchOptions& options) {
  if (!(options.min_f0_hz > 0.0) || !(options.min_f0_hz < options.max_f0_hz)) {
    throw Error("F0 range must satisfy 0 < min_f0_hz < max_f0_hz");
  }
  const double rate = buffer.sample_rate_hz();
  const auto min_period =
      std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(rate / options.max_f0_hz)));
  const auto max_period = static_cast<std::size_t>(std::ceil(rate / options.min_f0_hz));
  const auto peaks = ExtractHalfPeaks(buffer);
  const auto stats = ComputePitchStats(peaks);
  const Polarity polarity = ChoosePolarity(stats);
  return MarkPitchPeriods(buffer, peaks, stats, polarity, min_period, max_period);
}

}  // namespace psv
