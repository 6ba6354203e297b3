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

#ifndef DOMPTEUR_METRICS_HPP_
#define DOMPTEUR_METRICS_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "dompteur/audio_io.hpp"

namespace dompteur {

struct WerBreakdown {
  int substitutions = 0;
  int deletions = 0;
  int insertions = 0;
  int reference_len = 0;
  double wer_percent = 0.0;

  int errors() const { return substitutions + deletions + insertions; }
};

// Whitespace split with ASCII case folding. No punctuation handling.
std::vector<std::string> Tokenize(std::string_view text);

// Unit-cost Levenshtein alignment of word sequences. Among optimal alignments
// the backtrace prefers match, then substitution, deletion, insertion.
// Throws Error(kEmptyReference) if `reference` is empty.
WerBreakdown Wer(const std::vector<std::string>& reference,
                 const std::vector<std::string>& hypothesis);
WerBreakdown Wer(std::string_view reference, std::string_view hypothesis);

// Raw edit distance, no normalization.
int EditDistance(const std::vector<std::string>& a,
                 const std::vector<std::string>& b);

inline constexpr int kSnrSegmentLen = 256;
inline constexpr double kSnrEnergyEpsilon = 1e-12;

struct SnrsegResult {
  double snrseg_db = 0.0;
  int segments_used = 0;
  int segments_skipped = 0;
  int segment_len = kSnrSegmentLen;
};

// Segmental SNR of `modified` against `original`, with noise
// sigma = modified - original. Non-overlapping 256-sample segments, trailing
// partial segment dropped; segments whose signal or noise energy is below
// 1e-12 are skipped. Throws Error(kLengthMismatch) for differing lengths or
// rates and Error(kNoUsableSegments) when nothing is left to average.
SnrsegResult Snrseg(const AudioBuffer& original, const AudioBuffer& modified);

}  // namespace dompteur

#endif  // DOMPTEUR_METRICS_HPP_
