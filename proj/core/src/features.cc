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

#include "psv/features.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "psv/error.h"

namespace psv {

std::array<double, kNumFeatures> UtteranceFeatures::AsArray() const {
  std::array<double, kNumFeatures> v{};
  v[0] = temporal.poc;
  v[1] = temporal.pot;
  v[2] = temporal.nec;
  v[3] = temporal.net;
  std::copy(cepstral.begin(), cepstral.end(), v.begin() + kNumTemporal);
  return v;
}

UtteranceFeatures UtteranceFeatures::FromArray(const std::array<double, kNumFeatures>& values,
                                               Vowel vowel) {
  UtteranceFeatures f;
  f.temporal = {values[0], values[1], values[2], values[3]};
  std::copy(values.begin() + kNumTemporal, values.end(), f.cepstral.begin());
  f.vowel = vowel;
  return f;
}

SteadyStateRegion SelectSteadyState(const SampleBuffer& buffer, const std::vector<Period>& periods,
                                    const FeatureOptions& options) {
  if (periods.size() < 3) {
    throw Error("steady-state selection needs at least 3 pitch periods, got " +
                std::to_string(periods.size()));
  }
  const auto x = buffer.samples();
  const auto peak_it = std::max_element(x.begin(), x.end(), [](double a, double b) {
    return std::abs(a) < std::abs(b);
  });
  const auto peak = static_cast<std::size_t>(peak_it - x.begin());

  std::size_t p = 0;
  if (peak >= periods.back().start) {
    p = periods.size() - 1;
  } else {
    // Last period starting at or before the peak; earlier peaks fall in period 0.
    const auto it = std::upper_bound(periods.begin(), periods.end(), peak,
                                     [](std::size_t v, const Period& q) { return v < q.start; });
    p = it == periods.begin() ? 0 : static_cast<std::size_t>(it - periods.begin()) - 1;
  }

  const std::size_t first = p >= options.periods_before ? p - options.periods_before : 0;
  const std::size_t last = std::min(periods.size() - 1, p + options.periods_after);
  SteadyStateRegion region;
  region.periods.assign(periods.begin() + static_cast<std::ptrdiff_t>(first),
                        periods.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  region.first_period = first;
  region.peak_period_index = p;
  return region;
}

ExtremaCounts CountExtrema(const SampleBuffer& buffer, const Period& period) {
  if (period.length < 3) {
    throw Error("extrema counting needs a period of at least 3 samples, got " +
                std::to_string(period.length));
  }
  if (period.start + period.length > buffer.size()) throw Error("period runs past the buffer");
  const auto w = buffer.samples().subspan(period.start, period.length);
  ExtremaCounts c;
  for (std::size_t i = 1; i + 1 < w.size(); ++i) {
    const bool crest = w[i - 1] < w[i] && w[i] > w[i + 1];
    const bool trough = w[i - 1] > w[i] && w[i] < w[i + 1];
    if (w[i] > 0.0) {
      c.poc += crest;
      c.pot += trough;
    } else {
      c.nec += crest;
      c.net += trough;
    }
  }
  return c;
}

TemporalFeatures ComputeTemporalFeatures(const SampleBuffer& buffer,
                                         const SteadyStateRegion& region) {
  if (region.periods.empty()) throw Error("empty steady-state region");
  ExtremaCounts sum;
  for (const auto& period : region.periods) {
    const ExtremaCounts c = CountExtrema(buffer, period);
    sum.poc += c.poc;
    sum.pot += c.pot;
    sum.nec += c.nec;
    sum.net += c.net;
  }
  const double n = static_cast<double>(region.periods.size());
  return {sum.poc / n, sum.pot / n, sum.nec / n, sum.net / n};
}

CepstralVector PitchSynchronousCepstra(const SampleBuffer& buffer, const SteadyStateRegion& region,
                                       const FeatureOptions& options) {
  const auto& periods = region.periods;
  if (periods.size() < 3) throw Error("region too short for cepstral frames");
  const std::size_t frames = std::min(periods.size() - 2, options.max_cepstral_frames);
  if (frames == 0) throw Error("max_cepstral_frames must be positive");

  CepstralVector mean{};
  const auto x = buffer.samples();
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t begin = periods[f].start;
    const std::size_t end = periods[f + 2].start + periods[f + 2].length;
    if (end > x.size() || end <= begin) throw Error("cepstral frame runs past the buffer");
    const CepstralVector c = FrameCepstra(x.subspan(begin, end - begin), options.lpc_order);
    for (std::size_t k = 0; k < kNumCepstra; ++k) mean[k] += c[k];
  }
  for (double& v : mean) v /= static_cast<double>(frames);
  return mean;
}

UtteranceFeatures ExtractUtteranceFeatures(const SampleBuffer& buffer, const PitchMarks& marks,
                                           Vowel vowel, const FeatureOptions& options) {
  const auto periods = PeriodsFromMarks(marks);
  const SteadyStateRegion region = SelectSteadyState(buffer, periods, options);
  UtteranceFeatures f;
  f.temporal = ComputeTemporalFeatures(buffer, region);
  f.cepstral = PitchSynchronousCepstra(buffer, region, options);
  f.vowel = vowel;
  return f;
}

}  // namespace psv
