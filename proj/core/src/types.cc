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

#include "psv/types.h"

#include <cctype>
#include <cmath>
#include <utility>

#include "psv/error.h"

namespace psv {

SampleBuffer::SampleBuffer(std::vector<double> samples, int sample_rate_hz)
    : samples_(std::move(samples)), sample_rate_hz_(sample_rate_hz) {
  if (sample_rate_hz_ <= 0) {
    throw Error("sample rate must be positive, got " + std::to_string(sample_rate_hz_));
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i])) {
      throw Error("non-finite sample at index " + std::to_string(i));
    }
  }
}

char VowelLabel(Vowel v) {
  switch (v) {
    case Vowel::kA: return 'a';
    case Vowel::kE: return 'e';
    case Vowel::kI: return 'i';
    case Vowel::kO: return 'o';
    case Vowel::kU: return 'u';
  }
  return '?';
}

Vowel ParseVowel(std::string_view label) {
  if (label.size() == 1) {
    switch (std::tolower(static_cast<unsigned char>(label[0]))) {
      case 'a': return Vowel::kA;
      case 'e': return Vowel::kE;
      case 'i': return Vowel::kI;
      case 'o': return Vowel::kO;
      case 'u': return Vowel::kU;
      default: break;
    }
  }
  throw Error("unknown vowel label '" + std::string(label) + "' (expected one of a,e,i,o,u)");
}

std::string_view PolarityName(Polarity p) {
  return p == Polarity::kPositive ? "positive" : "negative";
}

}  // namespace psv
