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

#include "psv/pipeline.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

#include "psv/error.h"
#include "psv/signal_io.h"

namespace psv {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename T>
T ParseNumber(std::string_view key, std::string_view text) {
  text = Trim(text);
  T value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error("bad value '" + std::string(text) + "' for " + std::string(key));
  }
  return value;
}

template <std::size_t N>
std::array<double, N> ParseList(std::string_view key, std::string_view text) {
  std::array<double, N> out{};
  std::size_t i = 0;
  while (true) {
    const auto comma = text.find(',');
    if (i == N) throw Error(std::string(key) + ": expected " + std::to_string(N) + " values");
    out[i++] = ParseNumber<double>(key, text.substr(0, comma));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (i != N) throw Error(std::string(key) + ": expected " + std::to_string(N) + " values");
  return out;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (sample_rate_hz <= 0) throw Error("sample_rate_hz must be positive");
  preprocess.plan.Validate();
  if (!(preprocess.silence_multiplier > 0.0)) throw Error("silence_multiplier must be positive");
  if (!(preprocess.normalization_target > 0.0)) throw Error("normalization_target must be positive");
  if (preprocess.silence_frames == 0) throw Error("silence_frames must be positive");
  if (!(pitch.min_f0_hz > 0.0) || !(pitch.min_f0_hz < pitch.max_f0_hz)) {
    throw Error("F0 range must satisfy 0 < min_f0_hz < max_f0_hz");
  }
  if (features.lpc_order == 0) throw Error("lpc_order must be positive");
  if (features.max_cepstral_frames == 0) throw Error("max_cepstral_frames must be positive");
  weights.Validate();
}

void ApplyConfigOption(PipelineConfig& config, std::string_view key, std::string_view value) {
  key = Trim(key);
  if (key == "sample_rate_hz") {
    config.sample_rate_hz = ParseNumber<int>(key, value);
  } else if (key == "frame_len") {
    config.preprocess.plan.frame_len = ParseNumber<std::size_t>(key, value);
  } else if (key == "frame_shift") {
    config.preprocess.plan.frame_shift = ParseNumber<std::size_t>(key, value);
  } else if (key == "silence_multiplier") {
    config.preprocess.silence_multiplier = ParseNumber<double>(key, value);
  } else if (key == "normalization_target") {
    config.preprocess.normalization_target = ParseNumber<double>(key, value);
  } else if (key == "silence_frames") {
    config.preprocess.silence_frames = ParseNumber<std::size_t>(key, value);
  } else if (key == "min_f0_hz") {
    config.pitch.min_f0_hz = ParseNumber<double>(key, value);
  } else if (key == "max_f0_hz") {
    config.pitch.max_f0_hz = ParseNumber<double>(key, value);
  } else if (key == "lpc_order") {
    config.features.lpc_order = ParseNumber<std::size_t>(key, value);
  } else if (key == "periods_before") {
    config.features.periods_before = ParseNumber<std::size_t>(key, value);
  } else if (key == "periods_after") {
    config.features.periods_after = ParseNumber<std::size_t>(key, value);
  } else if (key == "max_cepstral_frames") {
    config.features.max_cepstral_frames = ParseNumber<std::size_t>(key, value);
  } else if (key == "cepstral_weights") {
    config.weights.cepstral = ParseList<kNumCepstra>(key, value);
  } else if (key == "temporal_weights") {
    config.weights.temporal = ParseList<kNumTemporal>(key, value);
  } else {
    throw Error("unknown config key '" + std::string(key) + "'");
  }
}

void ApplyConfigFile(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config '" + path.string() + "'");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = Trim(text);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    try {
      ApplyConfigOption(config, text.substr(0, eq), text.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
}

UtteranceFeatures ProcessUtterance(const SampleBuffer& raw, Vowel vowel,
                                   const PipelineConfig& config) {
  const SampleBuffer clean = Preprocess(raw, config.preprocess);
  const PitchMarks marks = DetectPitchMarks(clean, config.pitch);
  return ExtractUtteranceFeatures(clean, marks, vowel, config.features);
}

UtteranceFeatures ProcessFile(const std::filesystem::path& path, Vowel vowel,
                              const PipelineConfig& config) {
  try {
    return ProcessUtterance(LoadSignal(path, config.sample_rate_hz), vowel, config);
  } catch (const Error& e) {
    const std::string what = e.what();
    // Loader messages already carry the path.
    if (what.find(path.string()) != std::string::npos) throw;
    throw Error(path.string() + ": " + what);
  }
}

}  // namespace psv
