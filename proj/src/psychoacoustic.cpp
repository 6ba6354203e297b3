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

#include "dompteur/psychoacoustic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "dompteur/error.hpp"

namespace dompteur {

namespace {

double DbToPower(double db) { return std::pow(10.0, db / 10.0); }
double PowerToDb(double power) { return 10.0 * std::log10(power); }

}  // namespace

double ThresholdInQuiet(double freq_hz) {
  if (!(freq_hz > 0.0) || !std::isfinite(freq_hz)) {
    throw Error(ErrorKind::kInvalidArgument,
                "threshold in quiet needs a positive frequency, got " +
                    std::to_string(freq_hz));
  }
  const double khz = freq_hz / 1000.0;
  const double db = 3.64 * std::pow(khz, -0.8) -
                    6.5 * std::exp(-0.6 * (khz - 3.3) * (khz - 3.3)) +
                    1e-3 * std::pow(khz, 4.0);
  return std::min(db, kQuietCeilingDb);
}

double HzToBark(double freq_hz) {
  return 13.0 * std::atan(0.00076 * freq_hz) +
         3.5 * std::atan((freq_hz / 7500.0) * (freq_hz / 7500.0));
}

BarkScale::BarkScale(const BinLayout& bin_layout) : layout(bin_layout) {
  const int k_max = layout.num_bins();
  bark.resize(static_cast<size_t>(k_max));
  quiet_db.resize(static_cast<size_t>(k_max));
  for (int k = 0; k < k_max; ++k) {
    const double f = layout.Frequency(k);
    bark[k] = HzToBark(f);
    quiet_db[k] = k == 0 ? kQuietCeilingDb : ThresholdInQuiet(f);
  }
}

int TonalNeighbourhood(int bin, int frame_len) {
  const int half = frame_len / 2;
  if (bin <= 2) return 0;
  // Position on the 512-point Layer I grid.
  const double r = bin * 256.0 / half;
  int width = 0;
  if (r < 63.0) {
    width = 2;
  } else if (r < 127.0) {
    width = 3;
  } else if (r < 250.0) {
    width = 6;
  }
  if (bin + width > half) return 0;
  return width;
}

std::vector<Masker> FindMaskers(std::span<const double> power_db,
                                const BarkScale& scale) {
  const int num_bins = scale.num_bins();
  if (static_cast<int>(power_db.size()) != num_bins) {
    throw Error(ErrorKind::kShapeMismatch,
                "frame has " + std::to_string(power_db.size()) +
                    " bins, expected " + std::to_string(num_bins));
  }
  const int frame_len = scale.layout.frame_len;
  std::vector<Masker> maskers;
  std::vector<bool> claimed(static_cast<size_t>(num_bins), false);

  for (int k = 1; k + 1 < num_bins; ++k) {
    const int width = TonalNeighbourhood(k, frame_len);
    if (width == 0) continue;
    const double x = power_db[k];
    if (!(x > power_db[k - 1] && x >= power_db[k + 1])) continue;
    bool tonal = true;
    for (int j = 2; j <= width && tonal; ++j) {
      tonal = x - power_db[k - j] >= kTonalPeakDb &&
              x - power_db[k + j] >= kTonalPeakDb;
    }
    if (!tonal) continue;
    const double level = PowerToDb(DbToPower(power_db[k - 1]) + DbToPower(x) +
                                   DbToPower(power_db[k + 1]));
    maskers.push_back({Masker::Kind::kTonal, k, level, scale.bark[k]});
    for (int j = -width; j <= width; ++j) claimed[k + j] = true;
  }

  // Non-tonal: one masker per critical band from the unclaimed bins. DC is
  // left out, it carries no audible content.
  struct Band {
    double power = 0.0;
    double log_bin_sum = 0.0;
    int bins = 0;
    bool any_unclaimed = false;
  };
  std::map<int, Band> bands;
  for (int k = 1; k < num_bins; ++k) {
    Band& band = bands[static_cast<int>(std::floor(scale.bark[k]))];
    band.log_bin_sum += std::log(static_cast<double>(k));
    ++band.bins;
    if (!claimed[k]) {
      band.power += DbToPower(power_db[k]);
      band.any_unclaimed = true;
    }
  }
  for (const auto& [index, band] : bands) {
    if (!band.any_unclaimed) continue;
    const int bin = std::clamp(
        static_cast<int>(std::lround(std::exp(band.log_bin_sum / band.bins))), 1,
        num_bins - 1);
    maskers.push_back(
        {Masker::Kind::kNonTonal, bin, PowerToDb(band.power), scale.bark[bin]});
  }

  std::stable_sort(maskers.begin(), maskers.end(),
                   [](const Masker& a, const Masker& b) { return a.bin < b.bin; });
  return maskers;
}

std::vector<Masker> DecimateMaskers(std::vector<Masker> maskers,
                                    const BarkScale& scale) {
  std::erase_if(maskers, [&](const Masker& m) {
    return m.level_db < scale.quiet_db.at(static_cast<size_t>(m.bin));
  });
  std::stable_sort(maskers.begin(), maskers.end(),
                   [](const Masker& a, const Masker& b) { return a.bin < b.bin; });

  // Survivors stay at least 0.5 Bark apart, so a replacement never comes
  // within range of the survivor before it.
  std::vector<Masker> kept;
  for (const Masker& m : maskers) {
    if (!kept.empty() && m.bark - kept.back().bark < kDecimationBark) {
      if (m.level_db > kept.back().level_db) kept.back() = m;
      continue;
    }
    kept.push_back(m);
  }
  return kept;
}

double MaskingIndex(const Masker& masker) {
  return masker.tonal() ? -6.025 - 0.275 * masker.bark
                        : -2.025 - 0.175 * masker.bark;
}

double SpreadingFunction(double dz, double masker_db) {
  if (dz < kSpreadLowBark || dz >= kSpreadHighBark) {
    return -std::numeric_limits<double>::infinity();
  }
  if (dz < -1.0) return 17.0 * (dz + 1.0) - (0.4 * masker_db + 6.0);
  if (dz < 0.0) return (0.4 * masker_db + 6.0) * dz;
  if (dz < 1.0) return -17.0 * dz;
  return -(dz - 1.0) * (17.0 - 0.15 * masker_db) - 17.0;
}

double IndividualThreshold(const Masker& masker, double bark) {
  return masker.level_db + MaskingIndex(masker) +
         SpreadingFunction(bark - masker.bark, masker.level_db);
}

std::vector<double> GlobalThreshold(std::span<const Masker> maskers,
                                    const BarkScale& scale) {
  std::vector<double> row(static_cast<size_t>(scale.num_bins()));
  for (int k = 0; k < scale.num_bins(); ++k) {
    double power = DbToPower(scale.quiet_db[k]);
    for (const Masker& m : maskers) {
      const double t = IndividualThreshold(m, scale.bark[k]);
      if (std::isfinite(t)) power += DbToPower(t);
    }
    row[k] = PowerToDb(power);
  }
  return row;
}

double SpectralMask::ZeroFraction() const {
  if (bits.size() == 0) return 0.0;
  const auto ones = bits.cast<long>().sum();
  return static_cast<double>(bits.size() - ones) / static_cast<double>(bits.size());
}

RealMatrix AnalysisLevels(const Spectrogram& spec) {
  if (spec.bins.size() == 0 || spec.bins.cwiseAbs().maxCoeff() == 0.0) {
    return RealMatrix::Constant(spec.bins.rows(), spec.bins.cols(), kFloorDb);
  }
  return MagnitudeDb(spec);
}

HearingThresholds ComputeThresholds(const Spectrogram& spec) {
  if (spec.num_bins() != spec.frame_len / 2 + 1) {
    throw Error(ErrorKind::kShapeMismatch,
                "spectrogram bin count does not match its frame length");
  }
  const BarkScale scale(spec.layout());
  const RealMatrix levels = AnalysisLevels(spec);

  HearingThresholds thresholds;
  thresholds.frame_len = spec.frame_len;
  thresholds.hop = spec.hop;
  thresholds.sample_rate = spec.sample_rate;
  thresholds.levels.resize(levels.rows(), levels.cols());
  for (Eigen::Index n = 0; n < levels.rows(); ++n) {
    const std::span<const double> frame(levels.row(n).data(),
                                        static_cast<size_t>(levels.cols()));
    const std::vector<Masker> maskers =
        DecimateMaskers(FindMaskers(frame, scale), scale);
    const std::vector<double> row = GlobalThreshold(maskers, scale);
    std::copy(row.begin(), row.end(), thresholds.levels.row(n).data());
  }
  return thresholds;
}

SpectralMask ComputeMask(const Spectrogram& spec,
                         const HearingThresholds& thresholds, double phi_db) {
  if (!std::isfinite(phi_db)) {
    throw Error(ErrorKind::kInvalidArgument, "phi must be finite");
  }
  if (thresholds.levels.rows() != spec.bins.rows() ||
      thresholds.levels.cols() != spec.bins.cols()) {
    throw Error(ErrorKind::kShapeMismatch,
                "thresholds are " + std::to_string(thresholds.levels.rows()) +
                    "x" + std::to_string(thresholds.levels.cols()) +
                    ", spectrogram is " + std::to_string(spec.bins.rows()) +
                    "x" + std::to_string(spec.bins.cols()));
  }
  const RealMatrix levels = AnalysisLevels(spec);
  SpectralMask mask;
  mask.bits = (levels.array() > thresholds.levels.array() + phi_db)
                  .cast<uint8_t>()
                  .matrix();
  return mask;
}

}  // namespace dompteur
