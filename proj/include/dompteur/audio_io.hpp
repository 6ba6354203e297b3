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

#ifndef DOMPTEUR_AUDIO_IO_HPP_
#define DOMPTEUR_AUDIO_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <vector>

namespace dompteur {

// Mono waveform. Samples are nominally in [-1, 1]; values read from PCM16
// always are, float32 input is taken as-is after a finiteness check.
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
};

// Throws Error(kInvalidArgument) unless the rate is positive and every
// sample is finite.
void Validate(const AudioBuffer& buffer);

// Reads a RIFF/WAVE file with PCM16 or IEEE float32 samples. Multichannel
// frames are averaged to mono; PCM16 value v becomes v / 32768.
AudioBuffer ReadWav(const std::filesystem::path& path);

// Writes PCM16 mono. Samples are clipped to [-1, 1], scaled by 32768, rounded
// half away from zero and saturated to [-32768, 32767], so PCM16 input
// survives a read/write cycle bit-exactly.
void WriteWav(const AudioBuffer& buffer, const std::filesystem::path& path);

// Quantization used by WriteWav, exposed for tests.
int16_t QuantizePcm16(double sample);

// Returns the buffer unchanged when its rate equals `rate`; the pipeline
// never resamples, so any mismatch throws Error(kRateMismatch).
const AudioBuffer& RequireRate(const AudioBuffer& buffer, int rate);

}  // namespace dompteur

#endif  // DOMPTEUR_AUDIO_IO_HPP_
