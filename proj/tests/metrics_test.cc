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

#include "dompteur/metrics.hpp"

#include <cmath>
#include <random>

#include "dompteur/error.hpp"
#include "gtest/gtest.h"
#include "support/error_kind.hpp"
#include "support/fixtures.hpp"

namespace dompteur {
namespace {

using testing::KindOf;

std::vector<std::string> RandomWords(std::mt19937_64& rng, int max_len) {
  static const char* const kVocab[] = {"a", "b", "c", "d"};
  std::vector<std::string> out(std::uniform_int_distribution<int>(0, max_len)(rng));
  for (auto& w : out) w = kVocab[std::uniform_int_distribution<int>(0, 3)(rng)];
  return out;
}

TEST(TokenizeTest, SplitsAndFolds) {
  EXPECT_EQ(Tokenize("  Send\tthe\nREPORT  "),
            (std::vector<std::string>{"send", "the", "report"}));
  EXPECT_TRUE(Tokenize(" \t ").empty());
}

TEST(WerTest, SingleSubstitution) {
  const WerBreakdown r = Wer("send secret financial report", "send the financial report");
  EXPECT_EQ(r.substitutions, 1);
  EXPECT_EQ(r.deletions, 0);
  EXPECT_EQ(r.insertions, 0);
  EXPECT_EQ(r.reference_len, 4);
  EXPECT_DOUBLE_EQ(r.wer_percent, 25.0);
}

TEST(WerTest, InsertionsOnly) {
  const WerBreakdown r = Wer("a b", "a b c d");
  EXPECT_EQ(r.insertions, 2);
  EXPECT_EQ(r.substitutions + r.deletions, 0);
  EXPECT_DOUBLE_EQ(r.wer_percent, 100.0);
}

TEST(WerTest, CanExceedHundredPercent) {
  const WerBreakdown r = Wer("a", "x y z");
  EXPECT_EQ(r.errors(), 3);
  EXPECT_DOUBLE_EQ(r.wer_percent, 300.0);
}

TEST(WerTest, DeletionsAndIdentity) {
  const WerBreakdown r = Wer("a b c d", "a d");
  EXPECT_EQ(r.deletions, 2);
  EXPECT_DOUBLE_EQ(r.wer_percent, 50.0);
  EXPECT_DOUBLE_EQ(Wer("Hello World", "hello   world").wer_percent, 0.0);
  const WerBreakdown empty_hyp = Wer("a b c", "");
  EXPECT_EQ(empty_hyp.deletions, 3);
  EXPECT_DOUBLE_EQ(empty_hyp.wer_percent, 100.0);
}

TEST(WerTest, EmptyReferenceRejected) {
  EXPECT_EQ(KindOf([] { Wer("", "a"); }), ErrorKind::kEmptyReference);
  EXPECT_EQ(KindOf([] { Wer("  ", ""); }), ErrorKind::kEmptyReference);
}

TEST(WerTest, AgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    auto ref = RandomWords(rng, 7);
    if (ref.empty()) ref.push_back("a");
    const auto hyp = RandomWords(rng, 7);
    const WerBreakdown r = Wer(ref, hyp);
    const int brute = testing::BruteForceEditDistance(ref, hyp);
    ASSERT_EQ(r.errors(), brute);
    ASSERT_EQ(EditDistance(ref, hyp), brute);
    // Counts are consistent with both lengths.
    ASSERT_EQ(static_cast<int>(ref.size()) - r.deletions + r.insertions,
              static_cast<int>(hyp.size()));
    ASSERT_DOUBLE_EQ(r.wer_percent, 100.0 * brute / ref.size());
  }
}

TEST(EditDistanceTest, MetricAxioms) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = RandomWords(rng, 6), b = RandomWords(rng, 6), c = RandomWords(rng, 6);
    ASSERT_EQ(EditDistance(a, b), EditDistance(b, a));
    ASSERT_LE(EditDistance(a, c), EditDistance(a, b) + EditDistance(b, c));
    ASSERT_EQ(EditDistance(a, a), 0);
  }
}

AudioBuffer Scaled(const AudioBuffer& x, double gain) {
  AudioBuffer y = x;
  for (double& v : y.samples) v *= gain;
  return y;
}

TEST(SnrsegTest, AnalyticCases) {
  const AudioBuffer x = testing::SpeechLike(31, 1.0);
  // modified = 1.1 x gives sigma = x / 10 in every segment: exactly 20 dB.
  const SnrsegResult r20 = Snrseg(x, Scaled(x, 1.1));
  EXPECT_NEAR(r20.snrseg_db, 20.0, 1e-9);
  EXPECT_EQ(r20.segment_len, 256);
  EXPECT_NEAR(Snrseg(x, Scaled(x, 2.0)).snrseg_db, 0.0, 1e-9);
  EXPECT_NEAR(Snrseg(x, Scaled(x, 0.0)).snrseg_db, 0.0, 1e-9);
}

TEST(SnrsegTest, TrailingPartialSegmentDropped) {
  const AudioBuffer x = testing::WhiteNoise(32, 256 * 4 + 100, 0.3);
  const SnrsegResult r = Snrseg(x, Scaled(x, 1.1));
  EXPECT_EQ(r.segments_used + r.segments_skipped, 4);
}

TEST(SnrsegTest, SilentSegmentsSkipped) {
  AudioBuffer x = testing::WhiteNoise(33, 256 * 6, 0.3);
  for (int t = 256; t < 512; ++t) x.samples[t] = 0.0;
  const SnrsegResult r = Snrseg(x, Scaled(x, 1.1));
  EXPECT_EQ(r.segments_used, 5);
  EXPECT_EQ(r.segments_skipped, 1);
  EXPECT_NEAR(r.snrseg_db, 20.0, 1e-9);
}

TEST(SnrsegTest, AgreesWithBruteForceAndDoublingNoiseLowersIt) {
  for (uint64_t seed = 0; seed < 30; ++seed) {
    const AudioBuffer x = testing::RandomFixture(seed);
    const AudioBuffer n = testing::WhiteNoise(seed + 500, x.size(), 0.01 + 0.001 * seed);
    AudioBuffer y = x, y2 = x;
    for (size_t t = 0; t < x.size(); ++t) {
      y.samples[t] += n.samples[t];
      y2.samples[t] += 2.0 * n.samples[t];
    }
    const double got = Snrseg(x, y).snrseg_db;
    ASSERT_NEAR(got, testing::BruteForceSnrseg(x.samples, y.samples, 256), 1e-9);
    // Doubling sigma costs 20 log10(2) in every segment.
    ASSERT_NEAR(got - Snrseg(x, y2).snrseg_db, 20.0 * std::log10(2.0), 1e-9);
  }
}

TEST(SnrsegTest, Errors) {
  const AudioBuffer x = testing::WhiteNoise(35, 1000, 0.2);
  EXPECT_EQ(KindOf([&] { Snrseg(x, testing::WhiteNoise(35, 999, 0.2)); }),
            ErrorKind::kLengthMismatch);
  AudioBuffer other_rate = x;
  other_rate.sample_rate = 8000;
  EXPECT_EQ(KindOf([&] { Snrseg(x, other_rate); }), ErrorKind::kLengthMismatch);
  EXPECT_EQ(KindOf([&] { Snrseg(x, x); }), ErrorKind::kNoUsableSegments);
  EXPECT_EQ(KindOf([&] { Snrseg(testing::Silence(2048), testing::Silence(2048)); }),
            ErrorKind::kNoUsableSegments);
  EXPECT_EQ(KindOf([&] { Snrseg(testing::WhiteNoise(1, 200, 0.2), testing::Silence(200)); }),
            ErrorKind::kNoUsableSegments);
}

}  // namespace
}  // namespace dompteur
