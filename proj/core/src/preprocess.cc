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

#include "psv/preprocess.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "psv/error.h"

namespace psv {

void FramePlan::Validate() const {
  if (frame_shift == 0 || frame_len == 0 || frame_shift > frame_len) {
    throw Error("invalid frame plan: need 0 < frame_shift (" + std::to_string(frame_shift) +
                ") <= frame_len (" + std::to_string(frame_len) + ")");
  }
}

SampleBuffer RemoveDc(const SampleBuffer& buffer) {
  if (buffer.empty()) throw Error("remove_dc: empty buffer");
  const auto& x = buffer.data();
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  std::vector<double> out(x.size());
  std::transform(x.begin(), x.end(), out.begin(), [mean](double v) { return v - mean; });
  return SampleBuffer(std::move(out), buffer.sample_rate_hz());
}

SampleBuffer NormalizePeak(const SampleBuffer& buffer, double target) {
  if (!(target > 0.0) || !std::isfinite(target)) {
    throw Error("normalization target must be positive");
  }
  double peak = 0.0;
  for (double v : buffer.samples()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw Error("silent signal");
  std::vector<double> out(buffer.size());
  std::transform(buffer.data().begin(), buffer.data().end(), out.begin(),
                 [&](double v) { return v * target / peak; });
  return SampleBuffer(std::move(out), buffer.sample_rate_hz());
}

EnergyProfile ComputeEnergyProfile(const SampleBuffer& buffer, const FramePlan& plan,
                                   std::size_t silence_frames, double silence_multiplier) {
  plan.Validate();
  if (silence_frames == 0) throw Error("silence_frames must be positive");
  if (buffer.size() < plan.frame_len) {
    throw Error("signal of " + std::to_string(buffer.size()) +
                " samples is shorter than one frame (" + std::to_string(plan.frame_len) + ")");
  }
  const std::size_t n_frames = (buffer.size() - plan.frame_len) / plan.frame_shift + 1;
  EnergyProfile profile;
  profile.frame_energies.resize(n_frames);
  const auto x = buffer.samples();
  for (std::size_t f = 0; f < n_frames; ++f) {
    const auto frame = x.subspan(f * plan.frame_shift, plan.frame_len);
    double sum = 0.0;
    for (double v : frame) sum += v * v;
    profile.frame_energies[f] = sum / static_cast<double>(plan.frame_len);
  }

  std::vector<double> sorted = profile.frame_energies;
  const std::size_t k = std::min(silence_frames, n_frames);
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), sorted.end());
  profile.silence_energy =
      std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k), 0.0) /
      static_cast<double>(k);

  const double threshold = silence_multiplier * profile.silence_energy;
  profile.speech_flags.resize(n_frames);
  for (std::size_t f = 0; f < n_frames; ++f) {
    profile.speech_flags[f] = profile.frame_energies[f] > threshold;
  }
  return profile;
}

SampleBuffer TrimSilence(const SampleBuffer& buffer, const EnergyProfile& profile,
                         const FramePlan& plan) {
  plan.Validate();
  const auto& flags = profile.speech_flags;
  const auto first = std::find(flags.begin(), flags.end(), true);
  if (first == flags.end()) throw Error("no speech detected");
  const auto last = std::find(flags.rbegin(), flags.rend(), true);
  const std::size_t first_frame = static_cast<std::size_t>(first - flags.begin());
  const std::size_t last_frame = flags.size() - 1 - static_cast<std::size_t>(last - flags.rbegin());

  const std::size_t begin = first_frame * plan.frame_shift;
  const std::size_t end = std::min(buffer.size(), last_frame * plan.frame_shift + plan.frame_len);
  if (begin >= end) throw Error("energy profile does not match the buffer");
  std::vector<double> out(buffer.data().begin() + static_cast<std::ptrdiff_t>(begin),
                          buffer.data().begin() + static_cast<std::ptrdiff_t>(end));
  return SampleBuffer(std::move(out), buffer.sample_rate_hz());
}

SampleBuffer Preprocess(const SampleBuffer& buffer, const PreprocessOptions& options) {
  const SampleBuffer centered = RemoveDc(buffer);
  const SampleBuffer normalized = NormalizePeak(centered, options.normalization_target);
  const EnergyProfile profile = ComputeEnergyProfile(normalized, options.plan, options.silence_frames,
                                                     options.silence_multiplier);
  return TrimSilence(normalized, profile, options.plan);
}

}  // namespace psv
