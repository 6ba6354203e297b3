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

#ifndef DOMPTEUR_ERROR_HPP_
#define DOMPTEUR_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dompteur {

// Every failure raised by the library carries one of these kinds so callers
// (the CLI, the python module) can react without parsing messages.
enum class ErrorKind {
  kMalformedContainer,
  kUnsupportedEncoding,
  kEmptyAudio,
  kIo,
  kRateMismatch,
  kInvalidArgument,
  kShapeMismatch,
  kNoReference,
  kEmptyReference,
  kLengthMismatch,
  kNoUsableSegments,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dompteur

#endif  // DOMPTEUR_ERROR_HPP_
