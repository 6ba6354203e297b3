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

#include "dompteur/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

#include "dompteur/error.hpp"
#include "fft.hpp"

namespace dompteur {

namespace {

// Below this summed window energy a sample is considered uncovered.
constexpr double kMinWindowEnergy = 1e-12;

}  // namespace

std::vector<double> HannWindow(int frame_len) {
  std::vector<double> window(static_cast<size_t>(frame_len));
  for (int i = 0; i < frame_len; ++i) {
    window[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / frame_len);
  }
  return window;
}

void ValidateFraming(int frame_len, int hop) {
  if (frame_len < 4 || !std::has_single_bit(static_cast<unsigned>(frame_len))) {
    throw Error(ErrorKind::kInvalidArgument,
                "frame length must be a power of two >= 4, got " +
                    std::to_string(frame_len));
  }
  if (hop <= 0 || hop > frame_len) {
    throw Error(ErrorKind::kInvalidArgument,
                "hop must be in (0, frame_len], got " + std::to_string(hop));
  }
}

bool IsColaHop(int frame_len, int hop) {
  return hop > 0 && frame_len % hop == 0 && frame_len / hop >= 2;
}

Spectrogram Stft(const AudioBuffer& buffer, int frame_len, int hop) {
  ValidateFraming(frame_len, hop);
  if (buffer.empty()) {
    throw Error(ErrorKind::kEmptyAudio, "cannot analyse empty audio");
  }
  Validate(buffer);

  const auto len = static_cast<long>(buffer.size());
  const long num_frames = (len + hop - 1) / hop;
  const int num_bins = frame_len / 2 + 1;
  const std::vector<double> window = HannWindow(frame_len);

  Spectrogram spec;
  spec.frame_len = frame_len;
  spec.hop = hop;
  spec.sample_rate = buffer.sample_rate;
  spec.bins.resize(num_frames, num_bins);

  internal::RealFft fft(frame_len);
  std::vector<double> frame(static_cast<size_t>(frame_len));
  for (long n = 0; n < num_frames; ++n) {
    const long start = FrameStart(n, frame_len, hop);
    for (int i = 0; i < frame_len; ++i) {
      const long t = start + i;
      frame[i] = (t >= 0 && t < len) ? buffer.samples[t] * window[i] : 0.0;
    }
    fft.Forward(frame, {spec.bins.row(n).data(), static_cast<size_t>(num_bins)});
  }
  return spec;
}

AudioBuffer Istft(const Spectrogram& spec, size_t out_len) {
  ValidateFraming(spec.frame_len, spec.hop);
  if (!IsColaHop(spec.frame_len, spec.hop)) {
    throw Error(ErrorKind::kInvalidArgument,
                "hop " + std::to_string(spec.hop) +
                    " does not satisfy overlap-add for a Hann window of " +
                    std::to_string(spec.frame_len));
  }
  if (spec.num_bins() != spec.frame_len / 2 + 1) {
    throw Error(ErrorKind::kShapeMismatch,
                "spectrogram has " + std::to_string(spec.num_bins()) +
                    " bins, expected " + std::to_string(spec.frame_len / 2 + 1));
  }

  const int frame_len = spec.frame_len;
  const auto len = static_cast<long>(out_len);
  const std::vector<double> window = HannWindow(frame_len);
  std::vector<double> sum(out_len, 0.0);
  std::vector<double> energy(out_len, 0.0);

  internal::RealFft fft(frame_len);
  std::vector<double> frame(static_cast<size_t>(frame_len));
  for (long n = 0; n < spec.num_frames(); ++n) {
    const long start = FrameStart(n, frame_len, spec.hop);
    if (start >= len) break;
    fft.Inverse({spec.bins.row(n).data(), static_cast<size_t>(spec.num_bins())},
                frame);
    for (int i = 0; i < frame_len; ++i) {
      const long t = start + i;
      if (t < 0 || t >= len) continue;
      sum[t] += frame[i] * window[i];
      energy[t] += window[i] * window[i];
    }
  }

  AudioBuffer out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(out_len);
  for (size_t t = 0; t < out_len; ++t) {
    out.samples[t] = energy[t] > kMinWindowEnergy ? sum[t] / energy[t] : 0.0;
  }
  return out;
}

RealMatrix MagnitudeDb(const Spectrogram& spec) {
  const RealMatrix magnitude = spec.bins.cwiseAbs();
  const double peak = magnitude.size() > 0 ? magnitude.maxCoeff() : 0.0;
  if (!(peak > 0.0)) {
    throw Error(ErrorKind::kNoReference,
                "all-zero spectrogram has no reference maximum");
  }
  return magnitude.unaryExpr([peak](double m) {
    if (m == 0.0) return kFloorDb;
    return std::max(kFloorDb, kFullScaleDb + 20.0 * std::log10(m / peak));
  });
}

}  // namespace dompteur
