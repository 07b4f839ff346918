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

#include "psv/signal_io.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <system_error>

#include "psv/error.h"

namespace psv {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::uint32_t ReadU32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t ReadU16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

}  // namespace

SampleBuffer LoadTextSamples(const std::filesystem::path& path, int sample_rate_hz) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path.string() + "'");

  std::vector<double> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = Trim(line);
    if (text.empty()) continue;
    // from_chars rejects a leading '+', which some exporters emit.
    if (text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw Error(path.string() + ":" + std::to_string(line_no) + ": not a number: '" +
                  std::string(Trim(line)) + "'");
    }
    samples.push_back(value);
  }
  if (samples.empty()) throw Error(path.string() + ": empty signal");
  return SampleBuffer(std::move(samples), sample_rate_hz);
}

SampleBuffer LoadWavPcm16(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  const std::string name = path.string();
  if (bytes.size() < 12 || std::string(bytes.begin(), bytes.begin() + 4) != "RIFF" ||
      std::string(bytes.begin() + 8, bytes.begin() + 12) != "WAVE") {
    throw Error(name + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  int rate = 0;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id(bytes.begin() + pos, bytes.begin() + pos + 4);
    const std::size_t size = ReadU32(&bytes[pos + 4]);
    const std::size_t body = pos + 8;
    const std::size_t avail = std::min(size, bytes.size() - body);
    if (id == "fmt ") {
      if (avail < 16) throw Error(name + ": truncated fmt chunk");
      const std::uint16_t format = ReadU16(&bytes[body]);
      const std::uint16_t channels = ReadU16(&bytes[body + 2]);
      const std::uint32_t sample_rate = ReadU32(&bytes[body + 4]);
      const std::uint16_t bits = ReadU16(&bytes[body + 14]);
      if (format != 1) throw Error(name + ": PCM required (format tag " + std::to_string(format) + ")");
      if (channels != 1) throw Error(name + ": mono required (" + std::to_string(channels) + " channels)");
      if (bits != 16) throw Error(name + ": 16-bit required (" + std::to_string(bits) + "-bit)");
      if (sample_rate == 0) throw Error(name + ": zero sample rate");
      rate = static_cast<int>(sample_rate);
      have_fmt = true;
    } else if (id == "data") {
      data = bytes.data() + body;
      data_size = avail;
    }
    pos = body + size + (size & 1);  // chunks are word aligned
  }
  if (!have_fmt) throw Error(name + ": missing fmt chunk");
  if (data == nullptr) throw Error(name + ": missing data chunk");

  std::vector<double> samples(data_size / 2);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = static_cast<std::int16_t>(ReadU16(data + 2 * i));
  }
  if (samples.empty()) throw Error(name + ": empty signal");
  return SampleBuffer(std::move(samples), rate);
}

void WriteTextSamples(const SampleBuffer& buffer, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  std::array<char, 64> text{};
  std::string chunk;
  chunk.reserve(buffer.size() * 8);
  for (double v : buffer.samples()) {
    auto [ptr, ec] = std::to_chars(text.data(), text.data() + text.size(), v);
    chunk.append(text.data(), ptr);
    chunk.push_back('\n');
  }
  out << chunk;
  out.flush();
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

SampleBuffer LoadSignal(const std::filesystem::path& path, int text_sample_rate_hz) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".wav") return LoadWavPcm16(path);
  return LoadTextSamples(path, text_sample_rate_hz);
}

}  // namespace psv
