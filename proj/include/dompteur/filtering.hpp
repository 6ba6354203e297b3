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

#ifndef DOMPTEUR_FILTERING_HPP_
#define DOMPTEUR_FILTERING_HPP_

#include <optional>

#include "dompteur/audio_io.hpp"
#include "dompteur/psychoacoustic.hpp"
#include "dompteur/spectral.hpp"

namespace dompteur {

struct FilterConfig {
  double phi_db = 0.0;
  double f_min_hz = 200.0;
  double f_max_hz = 7000.0;
  bool psycho_enabled = true;
  bool bandpass_enabled = true;
  int frame_len = kDefaultFrameLen;
  int hop = kDefaultHop;

  // Throws Error(kInvalidArgument) on a non-finite phi, bad framing, a hop
  // that cannot be resynthesized, or (when the band-pass is on) cut-offs
  // outside 0 <= f_min < f_max <= sample_rate / 2.
  void Validate(int sample_rate) const;
};

// Closed-interval rule shared by the signal and gradient band-pass: bin k is
// kept iff f_min <= k * sample_rate / frame_len <= f_max.
bool InBand(const BinLayout& layout, int bin, double f_min_hz,
            double f_max_hz);

// Zeroes every bin whose center frequency lies outside [f_min, f_max]; kept
// bins are copied untouched.
Spectrogram BandPass(const Spectrogram& spec, double f_min_hz,
                     double f_max_hz);

// T = S ⊙ M.
Spectrogram ApplyMask(const Spectrogram& spec, const SpectralMask& mask);

// Band-pass and mask stages of the pipeline on an already analysed
// spectrogram. Disabled stages are skipped.
Spectrogram FilterSpectrogram(const Spectrogram& spec,
                              const SpectralMask& mask,
                              const FilterConfig& config);

struct FilterResult {
  AudioBuffer audio;
  // All ones when the psychoacoustic stage is disabled.
  SpectralMask mask;
  // Present only when the psychoacoustic stage ran.
  std::optional<HearingThresholds> thresholds;
};

// stft -> thresholds -> mask(phi) -> apply mask -> band-pass -> istft.
// The input must be sampled at 16 kHz.
FilterResult DompteurFilter(const AudioBuffer& buffer,
                            const FilterConfig& config);

// Backward pass of the band-pass: gradient entries of out-of-band bins are
// zeroed with the same bin rule as BandPass.
ComplexMatrix MaskGradientBandPass(const ComplexMatrix& grad,
                                   const BinLayout& layout, double f_min_hz,
                                   double f_max_hz);

// Backward pass of the mask: dS = dT ⊙ M.
ComplexMatrix MaskGradientPsycho(const ComplexMatrix& grad,
                                 const SpectralMask& mask);

}  // namespace dompteur

#endif  // DOMPTEUR_FILTERING_HPP_
