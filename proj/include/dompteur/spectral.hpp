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

#ifndef DOMPTEUR_SPECTRAL_HPP_
#define DOMPTEUR_SPECTRAL_HPP_

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "dompteur/audio_io.hpp"

namespace dompteur {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr int kDefaultFrameLen = 512;
inline constexpr int kDefaultHop = 256;

// Level assigned to the loudest bin of a spectrogram.
inline constexpr double kFullScaleDb = 96.0;
// Lower clamp for every dB level, including zero magnitudes.
inline constexpr double kFloorDb = -100.0;

enum class Window { kHann };

// Frequency layout of a one-sided spectrum: K = frame_len / 2 + 1 bins spaced
// sample_rate / frame_len apart.
struct BinLayout {
  int frame_len = kDefaultFrameLen;
  int sample_rate = 16000;

  int num_bins() const { return frame_len / 2 + 1; }
  double bin_hz() const { return static_cast<double>(sample_rate) / frame_len; }
  double Frequency(int bin) const { return bin * bin_hz(); }
  double nyquist() const { return sample_rate / 2.0; }
};

// One-sided STFT, rows are frames (n) and columns bins (k).
//
// Frame n is centered on the hop block [n * hop, (n + 1) * hop) and starts at
// FrameStart(n, frame_len, hop); samples outside the signal read as zero.
// There are ceil(len / hop) frames, one per (possibly partial) hop block, so
// every sample lies within hop / 2 of some frame center.
struct Spectrogram {
  ComplexMatrix bins;
  int frame_len = kDefaultFrameLen;
  int hop = kDefaultHop;
  Window window = Window::kHann;
  int sample_rate = 16000;

  int num_frames() const { return static_cast<int>(bins.rows()); }
  int num_bins() const { return static_cast<int>(bins.cols()); }
  BinLayout layout() const { return {frame_len, sample_rate}; }
};

inline long FrameStart(long n, int frame_len, int hop) {
  return n * hop - (frame_len - hop) / 2;
}

// Periodic Hann window of length `frame_len`.
std::vector<double> HannWindow(int frame_len);

// Throws Error(kInvalidArgument) unless frame_len is a power of two >= 4 and
// 0 < hop <= frame_len.
void ValidateFraming(int frame_len, int hop);

// True when Hann overlap-add with this hop covers every sample, i.e.
// frame_len / hop is an integer >= 2.
bool IsColaHop(int frame_len, int hop);

Spectrogram Stft(const AudioBuffer& buffer, int frame_len = kDefaultFrameLen,
                 int hop = kDefaultHop);

// Weighted overlap-add: each frame is inverse transformed, multiplied by the
// window again and the sum is divided by the summed squared windows. Output is
// truncated or zero padded to `out_len`.
AudioBuffer Istft(const Spectrogram& spec, size_t out_len);

// 96 dB full-scale levels: 96 + 20 log10(|S| / max|S|), floored at -100 dB.
// Throws Error(kNoReference) for an all-zero spectrogram.
RealMatrix MagnitudeDb(const Spectrogram& spec);

}  // namespace dompteur

#endif  // DOMPTEUR_SPECTRAL_HPP_
