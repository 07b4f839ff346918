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

#ifndef PSV_PREPROCESS_H_
#define PSV_PREPROCESS_H_

#include <cstddef>
#include <vector>

#include "psv/types.h"

namespace psv {

struct FramePlan {
  std::size_t frame_len = 100;
  std::size_t frame_shift = 50;

  // Throws unless 0 < frame_shift <= frame_len.
  void Validate() const;
};

struct EnergyProfile {
  std::vector<double> frame_energies;  // mean squared amplitude per frame
  double silence_energy = 0.0;
  std::vector<bool> speech_flags;
};

struct PreprocessOptions {
  FramePlan plan;
  double silence_multiplier = 1.10;
  double normalization_target = 10000.0;
  std::size_t silence_frames = 10;
};

SampleBuffer RemoveDc(const SampleBuffer& buffer);

// Scales so that max |sample| equals `target`. Throws "silent signal" on an
// all-zero input.
SampleBuffer NormalizePeak(const SampleBuffer& buffer, double target = 10000.0);

// Frame i covers [i*shift, i*shift + len). Only whole frames are formed.
// The silence reference is the mean energy of the `silence_frames` quietest
// frames; a frame is speech when its energy is strictly above
// `silence_multiplier` times that reference.
EnergyProfile ComputeEnergyProfile(const SampleBuffer& buffer, const FramePlan& plan,
                                   std::size_t silence_frames = 10,
                                   double silence_multiplier = 1.10);

// Keeps the contiguous span from the first through the last speech frame.
SampleBuffer TrimSilence(const SampleBuffer& buffer, const EnergyProfile& profile,
                         const FramePlan& plan);

// DC removal, peak normalization, then silence trimming.
SampleBuffer Preprocess(const SampleBuffer& buffer, const PreprocessOptions& options = {});

}  // namespace psv

#endif  // PSV_PREPROCESS_H_
