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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "dompteur/error.hpp"

namespace dompteur {

namespace {

// (|a| + 1) x (|b| + 1) table of prefix edit distances, row-major.
std::vector<int> DistanceTable(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  const size_t rows = a.size() + 1;
  const size_t cols = b.size() + 1;
  std::vector<int> d(rows * cols);
  for (size_t i = 0; i < rows; ++i) d[i * cols] = static_cast<int>(i);
  for (size_t j = 0; j < cols; ++j) d[j] = static_cast<int>(j);
  for (size_t i = 1; i < rows; ++i) {
    for (size_t j = 1; j < cols; ++j) {
      const int diagonal = d[(i - 1) * cols + j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      const int up = d[(i - 1) * cols + j] + 1;
      const int left = d[i * cols + j - 1] + 1;
      d[i * cols + j] = std::min({diagonal, up, left});
    }
  }
  return d;
}

}  // namespace

std::vector<std::string> Tokenize(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(
          static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

int EditDistance(const std::vector<std::string>& a,
                 const std::vector<std::string>& b) {
  return DistanceTable(a, b).back();
}

WerBreakdown Wer(const std::vector<std::string>& reference,
                 const std::vector<std::string>& hypothesis) {
  if (reference.empty()) {
    throw Error(ErrorKind::kEmptyReference, "reference transcript is empty");
  }
  const std::vector<int> d = DistanceTable(reference, hypothesis);
  const size_t cols = hypothesis.size() + 1;
  auto at = [&](size_t i, size_t j) { return d[i * cols + j]; };

  WerBreakdown result;
  result.reference_len = static_cast<int>(reference.size());
  size_t i = reference.size();
  size_t j = hypothesis.size();
  while (i > 0 || j > 0) {
    const int here = at(i, j);
    if (i > 0 && j > 0) {
      const bool same = reference[i - 1] == hypothesis[j - 1];
      if (same && at(i - 1, j - 1) == here) {
        --i, --j;
        continue;
      }
      if (!same && at(i - 1, j - 1) + 1 == here) {
        ++result.substitutions;
        --i, --j;
        continue;
      }
    }
    if (i > 0 && at(i - 1, j) + 1 == here) {
      ++result.deletions;
      --i;
    } else {
      ++result.insertions;
      --j;
    }
  }
  result.wer_percent = 100.0 * result.errors() / result.reference_len;
  return result;
}

WerBreakdown Wer(std::string_view reference, std::string_view hypothesis) {
  return Wer(Tokenize(reference), Tokenize(hypothesis));
}

SnrsegResult Snrseg(const AudioBuffer& original, const AudioBuffer& modified) {
  if (original.size() != modified.size()) {
    throw Error(ErrorKind::kLengthMismatch,
                "signals differ in length: " + std::to_string(original.size()) +
                    " vs " + std::to_string(modified.size()));
  }
  if (original.sample_rate != modified.sample_rate) {
    throw Error(ErrorKind::kLengthMismatch,
                "signals differ in sample rate: " +
                    std::to_string(original.sample_rate) + " vs " +
                    std::to_string(modified.sample_rate));
  }

  SnrsegResult result;
  const size_t segments = original.size() / kSnrSegmentLen;
  double sum_db = 0.0;
  for (size_t s = 0; s < segments; ++s) {
    double signal = 0.0;
    double noise = 0.0;
    for (size_t t = s * kSnrSegmentLen; t < (s + 1) * kSnrSegmentLen; ++t) {
      const double x = original.samples[t];
      const double sigma = modified.samples[t] - x;
      signal += x * x;
      noise += sigma * sigma;
    }
    if (signal < kSnrEnergyEpsilon || noise < kSnrEnergyEpsilon) {
      ++result.segments_skipped;
      continue;
    }
    sum_db += 10.0 * std::log10(signal / noise);
    ++result.segments_used;
  }
  if (result.segments_used == 0) {
    throw Error(ErrorKind::kNoUsableSegments,
                "zero usable segments (" + std::to_string(segments) +
                    " segments, all silent or noise-free)");
  }
  result.snrseg_db = sum_db / result.segments_used;
  return result;
}

}  // namespace dompteur
