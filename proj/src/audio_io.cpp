// Copyright 2026 The Dompteur Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dompteur/audio_io.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <optional>
#include <string>

#include "dompteur/error.hpp"

namespace dompteur {

namespace {

constexpr uint16_t kFormatPcm = 1;
constexpr uint16_t kFormatFloat = 3;
constexpr uint16_t kFormatExtensible = 0xFFFE;

uint16_t LoadU16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t LoadU32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void StoreU16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void StoreU32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

[[noreturn]] void Malformed(const std::filesystem::path& path,
                            const std::string& what) {
  throw Error(ErrorKind::kMalformedContainer,
              path.string() + ": malformed WAV: " + what);
}

struct Format {
  uint16_t tag = 0;
  uint16_t channels = 0;
  uint32_t sample_rate = 0;
  uint16_t block_align = 0;
  uint16_t bits = 0;
};

}  // namespace

void Validate(const AudioBuffer& buffer) {
  if (buffer.sample_rate <= 0) {
    throw Error(ErrorKind::kInvalidArgument, "sample rate must be positive");
  }
  for (double s : buffer.samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorKind::kInvalidArgument, "non-finite sample");
    }
  }
}

AudioBuffer ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::kIo, "cannot open " + path.string());
  }
  const std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    Malformed(path, "missing RIFF/WAVE header");
  }

  std::optional<Format> format;
  const uint8_t* data = nullptr;
  size_t data_size = 0;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const uint8_t* chunk = bytes.data() + pos;
    const size_t size = LoadU32(chunk + 4);
    const size_t body = pos + 8;
    if (size > bytes.size() - body) {
      // Writers that stream often leave a bogus data size; accept what exists.
      if (std::memcmp(chunk, "data", 4) != 0) Malformed(path, "truncated chunk");
    }
    const size_t available = std::min(size, bytes.size() - body);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (available < 16) Malformed(path, "short fmt chunk");
      const uint8_t* f = bytes.data() + body;
      Format fmt;
      fmt.tag = LoadU16(f);
      fmt.channels = LoadU16(f + 2);
      fmt.sample_rate = LoadU32(f + 4);
      fmt.block_align = LoadU16(f + 12);
      fmt.bits = LoadU16(f + 14);
      if (fmt.tag == kFormatExtensible) {
        if (available < 26) Malformed(path, "short extensible fmt chunk");
        // First two bytes of the sub-format GUID carry the actual format tag.
        fmt.tag = LoadU16(f + 24);
      }
      format = fmt;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      data = bytes.data() + body;
      data_size = available;
    }
    pos = body + size + (size & 1);
  }

  if (!format) Malformed(path, "no fmt chunk");
  if (data == nullptr) Malformed(path, "no data chunk");
  if (format->channels == 0 || format->sample_rate == 0) {
    Malformed(path, "zero channels or sample rate");
  }
  const bool pcm16 = format->tag == kFormatPcm && format->bits == 16;
  const bool float32 = format->tag == kFormatFloat && format->bits == 32;
  if (!pcm16 && !float32) {
    throw Error(ErrorKind::kUnsupportedEncoding,
                path.string() + ": only PCM16 and float32 WAV are supported (format " +
                    std::to_string(format->tag) + ", " +
                    std::to_string(format->bits) + " bits)");
  }
  const size_t bytes_per_sample = format->bits / 8;
  const size_t frame_bytes = bytes_per_sample * format->channels;
  if (format->block_align != frame_bytes) {
    Malformed(path, "block alignment does not match channels and bit depth");
  }
  const size_t num_frames = data_size / frame_bytes;
  if (num_frames == 0) {
    throw Error(ErrorKind::kEmptyAudio, path.string() + ": no audio frames");
  }

  AudioBuffer buffer;
  buffer.sample_rate = static_cast<int>(format->sample_rate);
  buffer.samples.resize(num_frames);
  for (size_t i = 0; i < num_frames; ++i) {
    const uint8_t* frame = data + i * frame_bytes;
    double sum = 0.0;
    for (size_t c = 0; c < format->channels; ++c) {
      const uint8_t* s = frame + c * bytes_per_sample;
      if (pcm16) {
        sum += static_cast<int16_t>(LoadU16(s)) / 32768.0;
      } else {
        const float v = std::bit_cast<float>(LoadU32(s));
        if (!std::isfinite(v)) Malformed(path, "non-finite float sample");
        sum += v;
      }
    }
    buffer.samples[i] = sum / format->channels;
  }
  return buffer;
}

int16_t QuantizePcm16(double sample) {
  const double clipped = std::clamp(sample, -1.0, 1.0);
  // std::round rounds half away from zero.
  const double scaled = std::round(clipped * 32768.0);
  return static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

void WriteWav(const AudioBuffer& buffer, const std::filesystem::path& path) {
  if (buffer.empty()) {
    throw Error(ErrorKind::kEmptyAudio, "refusing to write empty audio");
  }
  Validate(buffer);
  const uint32_t data_bytes = static_cast<uint32_t>(buffer.size() * 2);

  std::string out;
  out.reserve(44 + data_bytes);
  out.append("RIFF");
  StoreU32(out, 36 + data_bytes);
  out.append("WAVEfmt ");
  StoreU32(out, 16);
  StoreU16(out, kFormatPcm);
  StoreU16(out, 1);
  StoreU32(out, static_cast<uint32_t>(buffer.sample_rate));
  StoreU32(out, static_cast<uint32_t>(buffer.sample_rate) * 2);
  StoreU16(out, 2);
  StoreU16(out, 16);
  out.append("data");
  StoreU32(out, data_bytes);
  for (double s : buffer.samples) {
    StoreU16(out, static_cast<uint16_t>(QuantizePcm16(s)));
  }

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    throw Error(ErrorKind::kIo, "cannot open " + path.string() + " for writing");
  }
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) {
    throw Error(ErrorKind::kIo, "write failed: " + path.string());
  }
}

const AudioBuffer& RequireRate(const AudioBuffer& buffer, int rate) {
  if (buffer.sample_rate != rate) {
    throw Error(ErrorKind::kRateMismatch,
                "expected " + std::to_string(rate) + " Hz audio, got " +
                    std::to_string(buffer.sample_rate) + " Hz (no resampling)");
  }
  return buffer;
}

}  // namespace dompteur
