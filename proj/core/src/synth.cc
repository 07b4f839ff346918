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

#include "psv/synth.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "psv/error.h"

namespace psv {
namespace {

// Two-pole resonator with unity gain at DC.
class Resonator {
 public:
  Resonator(double center_hz, double bandwidth_hz, double rate) {
    const double r = std::exp(-std::numbers::pi * bandwidth_hz / rate);
    c_ = -r * r;
    b_ = 2.0 * r * std::cos(2.0 * std::numbers::pi * center_hz / rate);
    a_ = 1.0 - b_ - c_;
  }

  double Step(double x) {
    const double y = a_ * x + b_ * y1_ + c_ * y2_;
    y2_ = y1_;
    y1_ = y;
    return y;
  }

 private:
  double a_ = 0.0, b_ = 0.0, c_ = 0.0;
  double y1_ = 0.0, y2_ = 0.0;
};

}  // namespace

SynthesizedVowel SynthVowel(const VowelSpec& spec) {
  const double rate = spec.sample_rate_hz;
  const double nyquist = rate / 2.0;
  if (spec.sample_rate_hz <= 0) throw Error("synth: sample rate must be positive");
  if (!(spec.f0_hz > 0.0) || !(spec.f0_hz < nyquist)) throw Error("synth: f0 must lie in (0, rate/2)");
  if (spec.formants.size() > 3) throw Error("synth: at most three formants");
  for (const auto& f : spec.formants) {
    if (!(f.center_hz > 0.0) || !(f.center_hz < nyquist) || !(f.bandwidth_hz > 0.0)) {
      throw Error("synth: formant " + std::to_string(f.center_hz) + " Hz / " +
                  std::to_string(f.bandwidth_hz) + " Hz is invalid");
    }
  }
  if (!(spec.duration_s > 0.0)) throw Error("synth: duration must be positive");
  if (spec.noise_level < 0.0 || spec.padding_s < 0.0 || spec.ramp_s < 0.0 ||
      !(spec.peak_amplitude > 0.0)) {
    throw Error("synth: negative level, padding or ramp");
  }

  const auto period = static_cast<std::size_t>(std::lround(rate / spec.f0_hz));
  const auto voiced_len = static_cast<std::size_t>(std::lround(spec.duration_s * rate));
  const auto pad = static_cast<std::size_t>(std::lround(spec.padding_s * rate));
  if (voiced_len == 0) throw Error("synth: duration shorter than one sample");

  std::vector<Resonator> cascade;
  for (const auto& f : spec.formants) cascade.emplace_back(f.center_hz, f.bandwidth_hz, rate);

  std::vector<double> voiced(voiced_len);
  for (std::size_t n = 0; n < voiced_len; ++n) {
    double v = n % period == 0 ? 1.0 : 0.0;
    for (auto& r : cascade) v = r.Step(v);
    voiced[n] = v;
  }

  const auto ramp = std::min(voiced_len / 2, static_cast<std::size_t>(std::lround(spec.ramp_s * rate)));
  for (std::size_t n = 0; n < ramp; ++n) {
    const double g = 0.5 - 0.5 * std::cos(std::numbers::pi * (static_cast<double>(n) + 0.5) /
                                          static_cast<double>(ramp));
    voiced[n] *= g;
    voiced[voiced_len - 1 - n] *= g;
  }

  double peak = 0.0;
  for (double v : voiced) peak = std::max(peak, std::abs(v));
  const double gain = peak > 0.0 ? spec.peak_amplitude / peak : 0.0;

  std::vector<double> samples(pad, 0.0);
  samples.reserve(voiced_len + 2 * pad);
  for (double v : voiced) samples.push_back(v * gain);
  samples.resize(voiced_len + 2 * pad, 0.0);

  if (spec.noise_level > 0.0) {
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> noise(0.0, spec.noise_level * spec.peak_amplitude);
    for (double& v : samples) v += noise(rng);
  }

  SynthesizedVowel out;
  out.buffer = SampleBuffer(std::move(samples), spec.sample_rate_hz);
  out.true_period = period;
  out.voiced_start = pad;
  return out;
}

std::vector<Formant> ReferenceFormants(Vowel vowel) {
  switch (vowel) {
    case Vowel::kA: return {{730, 80}, {1090, 100}, {2440, 140}};
    case Vowel::kE: return {{530, 80}, {1840, 100}, {2480, 140}};
    case Vowel::kI: return {{270, 80}, {2290, 100}, {3010, 140}};
    case Vowel::kO: return {{570, 80}, {840, 100}, {2410, 140}};
    case Vowel::kU: return {{300, 80}, {870, 100}, {2240, 140}};
  }
  return {};
}

}  // namespace psv
