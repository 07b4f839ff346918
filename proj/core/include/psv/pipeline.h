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

#ifndef PSV_PIPELINE_H_
#define PSV_PIPELINE_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "psv/decision.h"
#include "psv/features.h"
#include "psv/pitch.h"
#include "psv/preprocess.h"
#include "psv/types.h"

namespace psv {

// Every tunable of the analysis chain, defaulting to the published constants.
struct PipelineConfig {
  int sample_rate_hz = kDefaultSampleRateHz;  // for text inputs only
  PreprocessOptions preprocess;
  PitchOptions pitch;
  FeatureOptions features;
  DistanceWeights weights;

  // Throws psv::Error on any non-positive or inconsistent value.
  void Validate() const;
};

// Sets one option by its config-file key (frame_len, min_f0_hz, ...).
// Weight overrides take a comma-separated list. Throws on unknown keys or
// unparsable values.
void ApplyConfigOption(PipelineConfig& config, std::string_view key, std::string_view value);

// key=value lines; '#' starts a comment; blank lines ignored.
void ApplyConfigFile(PipelineConfig& config, const std::filesystem::path& path);

// Preprocess, mark pitch periods and extract the 16 features.
UtteranceFeatures ProcessUtterance(const SampleBuffer& raw, Vowel vowel,
                                   const PipelineConfig& config);

UtteranceFeatures ProcessFile(const std::filesystem::path& path, Vowel vowel,
                              const PipelineConfig& config);

}  // namespace psv

#endif  // PSV_PIPELINE_H_
