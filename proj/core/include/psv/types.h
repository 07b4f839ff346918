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

#ifndef PSV_TYPES_H_
#define PSV_TYPES_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace psv {

inline constexpr int kDefaultSampleRateHz = 16000;
inline constexpr std::size_t kNumTemporal = 4;
inline constexpr std::size_t kNumCepstra = 12;
inline constexpr std::size_t kNumFeatures = kNumTemporal + kNumCepstra;

// A mono speech signal. Samples are real-valued throughout the pipeline.
class SampleBuffer {
 public:
  SampleBuffer() = default;
  // Throws psv::Error if the rate is not positive or any sample is non-finite.
  SampleBuffer(std::vector<double> samples, int sample_rate_hz);

  std::span<const double> samples() const { return samples_; }
  const std::vector<double>& data() const { return samples_; }
  int sample_rate_hz() const { return sample_rate_hz_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double operator[](std::size_t i) const { return samples_[i]; }

  friend bool operator==(const SampleBuffer&, const SampleBuffer&) = default;

 private:
  std::vector<double> samples_;
  int sample_rate_hz_ = kDefaultSampleRateHz;
};

enum class Vowel { kA, kE, kI, kO, kU };

inline constexpr std::array<Vowel, 5> kAllVowels = {Vowel::kA, Vowel::kE, Vowel::kI,
                                                    Vowel::kO, Vowel::kU};

char VowelLabel(Vowel v);
// Accepts "a", "e", "i", "o", "u" (case-insensitive); throws psv::Error otherwise.
Vowel ParseVowel(std::string_view label);

enum class Polarity { kPositive, kNegative };

std::string_view PolarityName(Polarity p);

}  // namespace psv

#endif  // PSV_TYPES_H_
