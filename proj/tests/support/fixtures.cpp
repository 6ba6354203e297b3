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

#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>

namespace dompteur::testing {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void NormalizePeak(std::vector<double>& x, double peak) {
  double max_abs = 0.0;
  for (double v : x) max_abs = std::max(max_abs, std::abs(v));
  if (max_abs == 0.0) return;
  for (double& v : x) v *= peak / max_abs;
}

void PutU16(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(v & 0xFF);
  out.push_back((v >> 8) & 0xFF);
}

void PutU32(std::vector<uint8_t>& out, uint32_t v) {
  PutU16(out, v & 0xFFFF);
  PutU16(out, v >> 16);
}

int EditRecursive(std::span<const std::string> a, std::span<const std::string> b) {
  if (a.empty()) return static_cast<int>(b.size());
  if (b.empty()) return static_cast<int>(a.size());
  const int diagonal =
      EditRecursive(a.subspan(1), b.subspan(1)) + (a[0] == b[0] ? 0 : 1);
  const int drop_a = EditRecursive(a.subspan(1), b) + 1;
  const int drop_b = EditRecursive(a, b.subspan(1)) + 1;
  return std::min({diagonal, drop_a, drop_b});
}

}  // namespace

AudioBuffer Sine(double freq_hz, double amplitude, size_t len, int rate) {
  AudioBuffer b;
  b.sample_rate = rate;
  b.samples.resize(len);
  for (size_t t = 0; t < len; ++t) {
    b.samples[t] = amplitude * std::sin(kTwoPi * freq_hz * static_cast<double>(t) / rate);
  }
  return b;
}

AudioBuffer Silence(size_t len, int rate) {
  return AudioBuffer{std::vector<double>(len, 0.0), rate};
}

AudioBuffer WhiteNoise(uint64_t seed, size_t len, double amplitude) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, amplitude);
  AudioBuffer b;
  b.sample_rate = kRate;
  b.samples.resize(len);
  for (double& v : b.samples) v = normal(rng);
  return b;
}

AudioBuffer SpeechLike(uint64_t seed, double seconds) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::normal_distribution<double> normal(0.0, 1.0);

  const auto total = static_cast<size_t>(seconds * kRate);
  std::vector<double> x(total, 0.0);
  size_t cursor = static_cast<size_t>(0.08 * kRate);
  while (cursor < total) {
    const double kind = uniform(0.0, 1.0);
    if (kind < 0.6) {
      const auto len = static_cast<size_t>(uniform(0.12, 0.3) * kRate);
      const double f0_start = uniform(100.0, 180.0);
      const double f0_end = uniform(90.0, 200.0);
      const double formants[3] = {uniform(300.0, 800.0), uniform(900.0, 2300.0),
                                  uniform(2400.0, 3300.0)};
      const double bandwidths[3] = {90.0, 120.0, 160.0};
      const double gains[3] = {1.0, 0.5, 0.25};
      const int harmonics = static_cast<int>(7600.0 / std::max(f0_start, f0_end));
      std::vector<double> amp(static_cast<size_t>(harmonics) + 1, 0.0);
      double phase = 0.0;
      for (size_t i = 0; i < len && cursor + i < total; ++i) {
        const double u = static_cast<double>(i) / len;
        const double f0 = f0_start + (f0_end - f0_start) * u;
        phase += kTwoPi * f0 / kRate;
        double v = 0.0;
        for (int h = 1; h <= harmonics; ++h) {
          const double f = h * f0;
          double env = 0.0;
          for (int j = 0; j < 3; ++j) {
            const double d = (f - formants[j]) / bandwidths[j];
            env += gains[j] / (1.0 + d * d);
          }
          v += (env + 0.002) / (1.0 + f / 1000.0) * std::sin(h * phase);
        }
        x[cursor + i] += std::sqrt(std::sin(std::numbers::pi * u)) * v;
      }
      cursor += len;
    } else if (kind < 0.8) {
      const auto len = static_cast<size_t>(uniform(0.06, 0.15) * kRate);
      double previous = 0.0;
      for (size_t i = 0; i < len && cursor + i < total; ++i) {
        const double u = static_cast<double>(i) / len;
        const double n = normal(rng);
        x[cursor + i] += 0.15 * std::sin(std::numbers::pi * u) * (n - previous);
        previous = n;
      }
      cursor += len;
    } else {
      cursor += static_cast<size_t>(uniform(0.05, 0.15) * kRate);
    }
  }
  for (double& v : x) v += 1e-4 * normal(rng);
  NormalizePeak(x, 0.7);
  return AudioBuffer{std::move(x), kRate};
}

AudioBuffer RandomFixture(uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  auto uniform = [&rng](double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
  };
  std::vector<double> x(kRate, 0.0);
  const int tones = std::uniform_int_distribution<int>(1, 4)(rng);
  for (int i = 0; i < tones; ++i) {
    const double f = uniform(80.0, 7800.0);
    const double a = uniform(0.05, 0.5);
    const double p = uniform(0.0, kTwoPi);
    for (size_t t = 0; t < x.size(); ++t) x[t] += a * std::sin(kTwoPi * f * t / kRate + p);
  }
  const AudioBuffer noise = WhiteNoise(seed + 1000, x.size(), uniform(0.001, 0.05));
  for (size_t t = 0; t < x.size(); ++t) x[t] += noise.samples[t];
  if (uniform(0.0, 1.0) < 1.0 / 3.0) {
    const AudioBuffer speech = SpeechLike(seed + 2000, 1.0);
    for (size_t t = 0; t < x.size(); ++t) x[t] += speech.samples[t];
  }
  NormalizePeak(x, uniform(0.2, 0.9));
  return AudioBuffer{std::move(x), kRate};
}

double RelativeL2(std::span<const double> expected, std::span<const double> got) {
  long double num = 0.0L, den = 0.0L;
  for (size_t i = 0; i < expected.size(); ++i) {
    const long double d = static_cast<long double>(got[i]) - expected[i];
    num += d * d;
    den += static_cast<long double>(expected[i]) * expected[i];
  }
  if (den == 0.0L) return std::sqrt(static_cast<double>(num));
  return std::sqrt(static_cast<double>(num / den));
}

double Correlation(std::span<const double> a, std::span<const double> b) {
  long double ab = 0.0L, aa = 0.0L, bb = 0.0L;
  for (size_t i = 0; i < a.size(); ++i) {
    ab += static_cast<long double>(a[i]) * b[i];
    aa += static_cast<long double>(a[i]) * a[i];
    bb += static_cast<long double>(b[i]) * b[i];
  }
  return static_cast<double>(ab / std::sqrt(aa * bb));
}

void WriteRawWav(const std::filesystem::path& path, int rate, int channels,
                 int format_tag, int bits, const std::vector<uint8_t>& data) {
  std::vector<uint8_t> out;
  const uint32_t block = static_cast<uint32_t>(channels * bits / 8);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  PutU32(out, static_cast<uint32_t>(36 + data.size()));
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  PutU32(out, 16);
  PutU16(out, static_cast<uint32_t>(format_tag));
  PutU16(out, static_cast<uint32_t>(channels));
  PutU32(out, static_cast<uint32_t>(rate));
  PutU32(out, static_cast<uint32_t>(rate) * block);
  PutU16(out, block);
  PutU16(out, static_cast<uint32_t>(bits));
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  PutU32(out, static_cast<uint32_t>(data.size()));
  out.insert(out.end(), data.begin(), data.end());
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f.write(reinterpret_cast<const char*>(out.data()),
          static_cast<std::streamsize>(out.size()));
}

std::vector<uint8_t> Pcm16Bytes(std::span<const int16_t> values) {
  std::vector<uint8_t> out;
  for (int16_t v : values) PutU16(out, static_cast<uint16_t>(v));
  return out;
}

int BruteForceEditDistance(std::span<const std::string> a,
                           std::span<const std::string> b) {
  return EditRecursive(a, b);
}

double BruteForceSnrseg(std::span<const double> x, std::span<const double> y,
                        int segment_len) {
  const size_t segments = x.size() / static_cast<size_t>(segment_len);
  long double total = 0.0L;
  int used = 0;
  for (size_t k = 0; k < segments; ++k) {
    long double signal = 0.0L, noise = 0.0L;
    for (int i = 0; i < segment_len; ++i) {
      const size_t t = k * segment_len + i;
      signal += static_cast<long double>(x[t]) * x[t];
      const long double sigma = static_cast<long double>(y[t]) - x[t];
      noise += sigma * sigma;
    }
    if (signal < 1e-12L || noise < 1e-12L) continue;
    total += 10.0L * std::log10(signal / noise);
    ++used;
  }
  if (used == 0) return std::numeric_limits<double>::quiet_NaN();
  return static_cast<double>(total / used);
}

std::vector<std::complex<double>> NaiveDft(std::span<const double> frame) {
  const size_t n = frame.size();
  std::vector<std::complex<double>> out(n / 2 + 1);
  for (size_t k = 0; k <= n / 2; ++k) {
    std::complex<long double> acc = 0.0L;
    for (size_t t = 0; t < n; ++t) {
      const long double angle = -2.0L * std::numbers::pi_v<long double> *
                                static_cast<long double>((k * t) % n) / n;
      acc += static_cast<long double>(frame[t]) *
             std::complex<long double>(std::cos(angle), std::sin(angle));
    }
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
  }
  return out;
}

double ReferenceIndividualThreshold(bool tonal, double masker_db,
                                    double masker_bark, double bark) {
  const double dz = bark - masker_bark;
  const double av = tonal ? -1.525 - 0.275 * masker_bark - 4.5
                          : -1.525 - 0.175 * masker_bark - 0.5;
  double vf;
  if (-3.0 <= dz && dz < -1.0) {
    vf = 17.0 * (dz + 1.0) - (0.4 * masker_db + 6.0);
  } else if (-1.0 <= dz && dz < 0.0) {
    vf = (0.4 * masker_db + 6.0) * dz;
  } else if (0.0 <= dz && dz < 1.0) {
    vf = -17.0 * dz;
  } else if (1.0 <= dz && dz < 8.0) {
    vf = -(dz - 1.0) * (17.0 - 0.15 * masker_db) - 17.0;
  } else {
    return -std::numeric_limits<double>::infinity();
  }
  return masker_db + av + vf;
}

std::filesystem::path TempDir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("dompteur_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace dompteur::testing
