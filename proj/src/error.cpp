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

#include "dompteur/error.hpp"

namespace dompteur {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedContainer: return "malformed_container";
    case ErrorKind::kUnsupportedEncoding: return "unsupported_encoding";
    case ErrorKind::kEmptyAudio: return "empty_audio";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kRateMismatch: return "rate_mismatch";
    case ErrorKind::kInvalidArgument: return "invalid_argument";
    case ErrorKind::kShapeMismatch: return "shape_mismatch";
    case ErrorKind::kNoReference: return "no_reference";
    case ErrorKind::kEmptyReference: return "empty_reference";
    case ErrorKind::kLengthMismatch: return "length_mismatch";
    case ErrorKind::kNoUsableSegments: return "no_usable_segments";
  }
  return "unknown";
}

}  // namespace dompteur
