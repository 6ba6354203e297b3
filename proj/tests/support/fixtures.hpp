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

// Deterministic test signals and independent reference computations. Nothing
// in here calls into the code paths it is used to check.

#ifndef DOMPTEUR_TESTS_SUPPORT_FIXTURES_HPP_
#define DOMPTEUR_TESTS_SUPPORT_FIXTURES_HPP_

#include <complex>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "dompteur/audio_io.hpp"

namespace dompteur::testing {

inline constexpr int kRate = 16000;

AudioBuffer Sine(double freq_hz, double amplitude, size_t len, int rate = kRate);
AudioBuffer Silence(size_t len, int rate = kRate);
AudioBuffer WhiteNoise(uint64_t seed, size_t len, double amplitude);

// Voiced syllables (gliding f0, three formants), fricative bursts and pauses
// over a faint noise floor. Peak amplitude 0.7.
AudioBuffer SpeechLike(uint64_t seed, double seconds = 2.0);

// One second of random tones, noise and occasionally speech-like content.
AudioBuffer RandomFixture(uint64_t seed);

double RelativeL2(std::span<const double> expected, std::span<const double> got);
double Correlation(std::span<const double> a, std::span<const double> b);

// Canonical 44-byte-header WAV encoder written independently of WriteWav.
// `bits` 16 stores int16 frames, 32 stores float frames.
void WriteRawWav(const std::filesystem::path& path, int rate, int channels,
                 int format_tag, int bits, const std::vector<uint8_t>& data);
std::vector<uint8_t> Pcm16Bytes(std::span<const int16_t> values);

// Edit distance by exhaustive recursion over every alignment path.
int BruteForceEditDistance(std::span<const std::string> a,
                           std::span<const std::string> b);

// Segmental SNR straight from the formula, long double accumulation.
// Returns NaN when no segment is usable.
double BruteForceSnrseg(std::span<const double> x, std::span<const double> y,
                        int segment_len = 256);

// O(N^2) one-sided DFT.
std::vector<std::complex<double>> NaiveDft(std::span<const double> frame);

// Model-1 individual threshold written out from the textbook formula.
double ReferenceIndividualThreshold(bool tonal, double masker_db,
                                    double masker_bark, double bark);

std::filesystem::path TempDir(const std::string& name);

}  // namespace dompteur::testing

#endif  // DOMPTEUR_TESTS_SUPPORT_FIXTURES_HPP_
