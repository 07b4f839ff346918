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

#ifndef PSV_SYNTH_H_
#define PSV_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "psv/types.h"

namespace psv {

struct Formant {
  double center_hz = 0.0;
  double bandwidth_hz = 0.0;
};

// A vowel made from a unit pulse train at an integer period
// round(rate / f0), passed through a cascade of two-pole resonators.
struct VowelSpec {
  double f0_hz = 120.0;
  std::vector<Formant> formants;  // at most three
  double duration_s = 0.5;
  int sample_rate_hz = kDefaultSampleRateHz;
  std::uint64_t seed = 0;
  double peak_amplitude = 10000.0;
  double noise_level = 0.0;   // Gaussian noise std as a fraction of the peak
  double padding_s = 0.0;     // noise-only lead-in and tail
  double ramp_s = 0.0;        // raised-cosine onset/offset
};

struct SynthesizedVowel {
  SampleBuffer buffer;
  std::size_t true_period = 0;
  std::size_t voiced_start = 0;  // index of the first pulse
};

SynthesizedVowel SynthVowel(const VowelSpec& spec);

// Peterson-Barney style adult male formants (F1..F3) for each vowel.
std::vector<Formant> ReferenceFormants(Vowel vowel);

}  // namespace psv

#endif  // PSV_SYNTH_H_
