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

#ifndef PSV_MODELING_H_
#define PSV_MODELING_H_

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "psv/features.h"
#include "psv/types.h"

namespace psv {

inline constexpr const char* kModelFileHeader = "PSV-MODELS v1";

struct SpeakerModel {
  std::string speaker_id;
  Vowel vowel = Vowel::kA;
  std::array<double, kNumFeatures> mean_features{};  // [poc, pot, nec, net, c1 .. c12]
  std::size_t n_utterances = 0;

  UtteranceFeatures AsFeatures() const {
    return UtteranceFeatures::FromArray(mean_features, vowel);
  }
};

using ModelKey = std::pair<std::string, Vowel>;

// Models keyed by (speaker, vowel); iteration order is speaker, then vowel.
class ModelSet {
 public:
  // Throws on a duplicate key or an empty speaker id.
  void Add(SpeakerModel model);

  const SpeakerModel* Find(const std::string& speaker_id, Vowel vowel) const;
  bool HasSpeaker(const std::string& speaker_id) const;
  std::vector<const SpeakerModel*> ModelsForVowel(Vowel vowel) const;

  const std::map<ModelKey, SpeakerModel>& models() const { return models_; }
  std::size_t size() const { return models_.size(); }
  bool empty() const { return models_.empty(); }

 private:
  std::map<ModelKey, SpeakerModel> models_;
};

// Coordinate-wise mean. Throws on an empty input or mixed vowels.
SpeakerModel BuildModel(const std::string& speaker_id, Vowel vowel,
                        const std::vector<UtteranceFeatures>& features);

void SaveModels(const ModelSet& set, const std::filesystem::path& path);
ModelSet LoadModels(const std::filesystem::path& path);

}  // namespace psv

#endif  // PSV_MODELING_H_
