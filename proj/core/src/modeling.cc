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

#include "psv/modeling.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "psv/error.h"

namespace psv {
namespace {

bool ValidSpeakerId(const std::string& id) {
  return !id.empty() && std::none_of(id.begin(), id.end(), [](unsigned char c) {
    return std::isspace(c) || c == ',';
  });
}

std::string FormatValue(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

}  // namespace

void ModelSet::Add(SpeakerModel model) {
  if (!ValidSpeakerId(model.speaker_id)) {
    throw Error("invalid speaker id '" + model.speaker_id + "' (empty or contains whitespace/comma)");
  }
  if (model.n_utterances == 0) throw Error("model for '" + model.speaker_id + "' has no utterances");
  ModelKey key{model.speaker_id, model.vowel};
  if (models_.count(key) != 0) {
    throw Error("duplicate model for speaker '" + model.speaker_id + "' vowel /" +
                VowelLabel(model.vowel) + "/");
  }
  models_.emplace(std::move(key), std::move(model));
}

const SpeakerModel* ModelSet::Find(const std::string& speaker_id, Vowel vowel) const {
  const auto it = models_.find({speaker_id, vowel});
  return it == models_.end() ? nullptr : &it->second;
}

bool ModelSet::HasSpeaker(const std::string& speaker_id) const {
  const auto it = models_.lower_bound({speaker_id, Vowel::kA});
  return it != models_.end() && it->first.first == speaker_id;
}

std::vector<const SpeakerModel*> ModelSet::ModelsForVowel(Vowel vowel) const {
  std::vector<const SpeakerModel*> out;
  for (const auto& [key, model] : models_) {
    if (key.second == vowel) out.push_back(&model);
  }
  return out;
}

SpeakerModel BuildModel(const std::string& speaker_id, Vowel vowel,
                        const std::vector<UtteranceFeatures>& features) {
  if (features.empty()) throw Error("cannot build a model for '" + speaker_id + "' from no utterances");
  SpeakerModel model;
  model.speaker_id = speaker_id;
  model.vowel = vowel;
  model.n_utterances = features.size();
  for (const auto& f : features) {
    if (f.vowel != vowel) {
      throw Error("mixed vowels in training set for '" + speaker_id + "': expected /" +
                  VowelLabel(vowel) + "/, got /" + VowelLabel(f.vowel) + "/");
    }
    const auto v = f.AsArray();
    for (std::size_t i = 0; i < kNumFeatures; ++i) model.mean_features[i] += v[i];
  }
  for (double& v : model.mean_features) v /= static_cast<double>(features.size());
  return model;
}

void SaveModels(const ModelSet& set, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << kModelFileHeader << '\n';
  for (const auto& [key, m] : set.models()) {
    out << m.speaker_id << ' ' << VowelLabel(m.vowel) << ' ' << m.n_utterances;
    for (double v : m.mean_features) out << ' ' << FormatValue(v);
    out << '\n';
  }
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

ModelSet LoadModels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  const std::string name = path.string();

  std::string line;
  if (!std::getline(in, line)) throw Error(name + ": empty model file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kModelFileHeader) {
    throw Error(name + ": version mismatch: expected '" + std::string(kModelFileHeader) +
                "', found '" + line + "'");
  }

  ModelSet set;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = name + ":" + std::to_string(line_no) + ": ";
    if (tokens.size() != 3 + kNumFeatures) {
      throw Error(where + "expected " + std::to_string(3 + kNumFeatures) + " fields, found " +
                  std::to_string(tokens.size()));
    }
    SpeakerModel m;
    m.speaker_id = tokens[0];
    try {
      m.vowel = ParseVowel(tokens[1]);
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
    auto [p, ec] = std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(),
                                   m.n_utterances);
    if (ec != std::errc() || p != tokens[2].data() + tokens[2].size() || m.n_utterances == 0) {
      throw Error(where + "bad utterance count '" + tokens[2] + "'");
    }
    for (std::size_t i = 0; i < kNumFeatures; ++i) {
      const std::string& t = tokens[3 + i];
      double v = 0.0;
      auto [q, ec2] = std::from_chars(t.data(), t.data() + t.size(), v);
      if (ec2 != std::errc() || q != t.data() + t.size() || !std::isfinite(v)) {
        throw Error(where + "bad feature value '" + t + "'");
      }
      m.mean_features[i] = v;
    }
    try {
      set.Add(std::move(m));
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  return set;
}

}  // namespace psv
