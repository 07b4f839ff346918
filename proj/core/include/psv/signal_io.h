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

#ifndef PSV_SIGNAL_IO_H_
#define PSV_SIGNAL_IO_H_

#include <filesystem>

#include "psv/types.h"

namespace psv {

// Plain-text samples: one decimal number per line, LF or CRLF, no header.
// Blank lines are ignored. The rate is not stored in the file.
SampleBuffer LoadTextSamples(const std::filesystem::path& path,
                             int sample_rate_hz = kDefaultSampleRateHz);

// RIFF/WAVE, PCM, 16-bit, mono only.
SampleBuffer LoadWavPcm16(const std::filesystem::path& path);

// Writes the shortest decimal that round-trips each sample, one per line.
void WriteTextSamples(const SampleBuffer& buffer, const std::filesystem::path& path);

// Dispatches on extension: ".wav" (any case) goes to LoadWavPcm16, everything
// else is read as text at `text_sample_rate_hz`.
SampleBuffer LoadSignal(const std::filesystem::path& path, int text_sample_rate_hz);

}  // namespace psv

#endif  // PSV_SIGNAL_IO_H_
