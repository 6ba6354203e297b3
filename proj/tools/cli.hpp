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

#ifndef DOMPTEUR_TOOLS_CLI_HPP_
#define DOMPTEUR_TOOLS_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dompteur/filtering.hpp"

namespace dompteur::cli {

inline constexpr int kExitOk = 0;
// At least one file or pair failed; the rest was still processed.
inline constexpr int kExitFailure = 1;
// Bad flags, bad config or nothing to do. No file was touched.
inline constexpr int kExitUsage = 2;

inline constexpr char kManifestName[] = "manifest.jsonl";

struct RunConfig {
  std::vector<std::string> inputs;
  std::filesystem::path out_dir;
  FilterConfig filter;
  int jobs = 1;
  bool dump_spectra = false;
  std::string config_path;
};

// Entry point of the `dompteur` tool. Never throws; returns the exit code.
int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Parses "min:max" in Hz.
std::pair<double, double> ParseBand(const std::string& text);

// FNV-1a 64 over the manifest records with their "timestamp" field removed,
// as 16 hex digits.
std::string ManifestDigest(const std::filesystem::path& manifest);

}  // namespace dompteur::cli

#endif  // DOMPTEUR_TOOLS_CLI_HPP_
