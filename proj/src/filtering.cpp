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

#include "dompteur/filtering.hpp"

#include <cmath>
#include <string>

#include "dompteur/error.hpp"

namespace dompteur {

namespace {

constexpr int kPipelineRate = 16000;

void CheckCutoffs(const BinLayout& layout, double f_min_hz, double f_max_hz) {
  if (!(f_min_hz >= 0.0 && f_min_hz < f_max_hz &&
        f_max_hz <= layout.nyquist())) {
    throw Error(ErrorKind::kInvalidArgument,
                "band-pass needs 0 <= f_min < f_max <= " +
                    std::to_string(layout.nyquist()) + " Hz, got " +
                    std::to_string(f_min_hz) + ":" + std::to_string(f_max_hz));
  }
}

void CheckMaskShape(Eigen::Index rows, Eigen::Index cols,
                    const SpectralMask& mask) {
  if (mask.bits.rows() != rows || mask.bits.cols() != cols) {
    throw Error(ErrorKind::kShapeMismatch,
                "mask is " + std::to_string(mask.bits.rows()) + "x" +
                    std::to_string(mask.bits.cols()) + ", expected " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

// Zeroes out-of-band columns in place.
void ZeroOutOfBand(ComplexMatrix& m, const BinLayout& layout, double f_min_hz,
                   double f_max_hz) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    if (!InBand(layout, static_cast<int>(k), f_min_hz, f_max_hz)) {
      m.col(k).setZero();
    }
  }
}

}  // namespace

void FilterConfig::Validate(int sample_rate) const {
  if (!std::isfinite(phi_db)) {
    throw Error(ErrorKind::kInvalidArgument, "phi must be finite");
  }
  ValidateFraming(frame_len, hop);
  if (!IsColaHop(frame_len, hop)) {
    throw Error(ErrorKind::kInvalidArgument,
                "hop " + std::to_string(hop) +
                    " cannot be resynthesized with a Hann window of " +
                    std::to_string(frame_len) +
                    " (frame_len / hop must be an integer >= 2)");
  }
  if (bandpass_enabled) {
    CheckCutoffs(BinLayout{frame_len, sample_rate}, f_min_hz, f_max_hz);
  }
}

bool InBand(const BinLayout& layout, int bin, double f_min_hz,
            double f_max_hz) {
  const double f = layout.Frequency(bin);
  return f >= f_min_hz && f <= f_max_hz;
}

Spectrogram BandPass(const Spectrogram& spec, double f_min_hz,
                     double f_max_hz) {
  CheckCutoffs(spec.layout(), f_min_hz, f_max_hz);
  Spectrogram out = spec;
  ZeroOutOfBand(out.bins, spec.layout(), f_min_hz, f_max_hz);
  return out;
}

Spectrogram ApplyMask(const Spectrogram& spec, const SpectralMask& mask) {
  CheckMaskShape(spec.bins.rows(), spec.bins.cols(), mask);
  Spectrogram out = spec;
  for (Eigen::Index n = 0; n < out.bins.rows(); ++n) {
    for (Eigen::Index k = 0; k < out.bins.cols(); ++k) {
      if (mask.bits(n, k) == 0) out.bins(n, k) = Complex{};
    }
  }
  return out;
}

Spectrogram FilterSpectrogram(const Spectrogram& spec,
                              const SpectralMask& mask,
                              const FilterConfig& config) {
  Spectrogram out = config.psycho_enabled ? ApplyMask(spec, mask) : spec;
  if (config.bandpass_enabled) {
    out = BandPass(out, config.f_min_hz, config.f_max_hz);
  }
  return out;
}

FilterResult DompteurFilter(const AudioBuffer& buffer,
                            const FilterConfig& config) {
  RequireRate(buffer, kPipelineRate);
  config.Validate(buffer.sample_rate);

  const Spectrogram spec = Stft(buffer, config.frame_len, config.hop);
  FilterResult result;
  if (config.psycho_enabled) {
    result.thresholds = ComputeThresholds(spec);
    result.mask = ComputeMask(spec, *result.thresholds, config.phi_db);
  } else {
    result.mask.bits = BitMatrix::Ones(spec.bins.rows(), spec.bins.cols());
  }
  result.audio =
      Istft(FilterSpectrogram(spec, result.mask, config), buffer.size());
  return result;
}

ComplexMatrix MaskGradientBandPass(const ComplexMatrix& grad,
                                   const BinLayout& layout, double f_min_hz,
                                   double f_max_hz) {
  CheckCutoffs(layout, f_min_hz, f_max_hz);
  if (grad.cols() != layout.num_bins()) {
    throw Error(ErrorKind::kShapeMismatch,
                "gradient has " + std::to_string(grad.cols()) +
                    " bins, expected " + std::to_string(layout.num_bins()));
  }
  ComplexMatrix out = grad;
  ZeroOutOfBand(out, layout, f_min_hz, f_max_hz);
  return out;
}

ComplexMatrix MaskGradientPsycho(const ComplexMatrix& grad,
                                 const SpectralMask& mask) {
  CheckMaskShape(grad.rows(), grad.cols(), mask);
  ComplexMatrix out = grad;
  for (Eigen::Index n = 0; n < out.rows(); ++n) {
    for (Eigen::Index k = 0; k < out.cols(); ++k) {
      if (mask.bits(n, k) == 0) out(n, k) = Complex{};
    }
  }
  return out;
}

}  // namespace dompteur
