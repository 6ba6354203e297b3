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

// Hearing thresholds following MPEG-1 psychoacoustic model 1.
//
// Per frame the 96 dB normalized power spectrum is searched for tonal and
// non-tonal maskers, maskers that are inaudible or shadowed by a louder
// neighbour are dropped, and the remaining ones are spread over the Bark
// scale and power-summed with the threshold in quiet. The resulting global
// threshold decides which bins are kept by the spectral mask.

#ifndef DOMPTEUR_PSYCHOACOUSTIC_HPP_
#define DOMPTEUR_PSYCHOACOUSTIC_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "dompteur/spectral.hpp"

namespace dompteur {

using BitMatrix =
    Eigen::Matrix<uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Model-1 constants.
inline constexpr double kTonalPeakDb = 7.0;
inline constexpr double kDecimationBark = 0.5;
inline constexpr double kQuietCeilingDb = 96.0;
inline constexpr double kSpreadLowBark = -3.0;
inline constexpr double kSpreadHighBark = 8.0;

// Terhardt approximation of the absolute hearing threshold, in dB, clamped to
// at most 96 dB. Throws Error(kInvalidArgument) for freq_hz <= 0.
double ThresholdInQuiet(double freq_hz);

// Critical-band rate: 13 atan(0.00076 f) + 3.5 atan((f / 7500)^2).
double HzToBark(double freq_hz);

// Per-bin frequency, Bark and quiet threshold for one BinLayout. Bin 0 (DC)
// gets the 96 dB ceiling, the limit of the clamped quiet threshold at 0 Hz.
struct BarkScale {
  explicit BarkScale(const BinLayout& layout);

  BinLayout layout;
  std::vector<double> bark;
  std::vector<double> quiet_db;

  int num_bins() const { return static_cast<int>(bark.size()); }
};

struct Masker {
  enum class Kind { kTonal, kNonTonal };

  Kind kind = Kind::kTonal;
  int bin = 0;
  double level_db = 0.0;
  double bark = 0.0;

  bool tonal() const { return kind == Kind::kTonal; }
};

// Bins compared against a tonal candidate at `bin`, as offsets on each side.
// Widths scale with the bin's position relative to Nyquist (+-2, +-2..3,
// +-2..6 as in Layer I); returns 0 where no tonal component is searched.
int TonalNeighbourhood(int bin, int frame_len);

// Tonal and non-tonal maskers of one frame of 96 dB normalized levels, sorted
// by bin. `power_db` must have scale.num_bins() entries.
std::vector<Masker> FindMaskers(std::span<const double> power_db,
                                const BarkScale& scale);

// Drops maskers below the threshold in quiet at their bin, then keeps only the
// louder of any two maskers closer than 0.5 Bark. Output sorted by bin.
std::vector<Masker> DecimateMaskers(std::vector<Masker> maskers,
                                    const BarkScale& scale);

// Masking index added to a masker's level (dB).
double MaskingIndex(const Masker& masker);

// Two-slope model-1 spreading function for distance dz = z(bin) - z(masker)
// in Bark and masker level in dB. Only meaningful for dz in [-3, 8).
double SpreadingFunction(double dz, double masker_db);

// Individual masking threshold of one masker at Bark value `bark`; -infinity
// outside the [-3, 8) Bark support.
double IndividualThreshold(const Masker& masker, double bark);

// Power sum of the threshold in quiet and all individual thresholds.
std::vector<double> GlobalThreshold(std::span<const Masker> maskers,
                                    const BarkScale& scale);

// H(n, k) on the 96 dB scale, same shape as the source spectrogram.
struct HearingThresholds {
  RealMatrix levels;
  int frame_len = kDefaultFrameLen;
  int hop = kDefaultHop;
  int sample_rate = 16000;

  int num_frames() const { return static_cast<int>(levels.rows()); }
  int num_bins() const { return static_cast<int>(levels.cols()); }
};

// Binary M(n, k); 1 keeps the bin, 0 removes it.
struct SpectralMask {
  BitMatrix bits;

  int num_frames() const { return static_cast<int>(bits.rows()); }
  int num_bins() const { return static_cast<int>(bits.cols()); }
  // Share of entries that are 0.
  double ZeroFraction() const;
};

// Levels used for masker search and for the mask comparison. Identical to
// MagnitudeDb except that an all-zero spectrogram maps to the floor everywhere
// instead of throwing, so silence has a well-defined mask.
RealMatrix AnalysisLevels(const Spectrogram& spec);

HearingThresholds ComputeThresholds(const Spectrogram& spec);

// M(n, k) = 0 if P(n, k) <= H(n, k) + phi else 1, P = AnalysisLevels(spec).
SpectralMask ComputeMask(const Spectrogram& spec,
                         const HearingThresholds& thresholds, double phi_db);

}  // namespace dompteur

#endif  // DOMPTEUR_PSYCHOACOUSTIC_HPP_
