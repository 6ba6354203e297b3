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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "dompteur/audio_io.hpp"
#include "dompteur/error.hpp"
#include "dompteur/metrics.hpp"
#include "dompteur/psychoacoustic.hpp"
#include "dompteur/spectral.hpp"

namespace dompteur::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kPipelineRate = 16000;

// Raised for problems that are the caller's fault and detected before any
// file is touched.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string FormatNumber(double value) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(value);
}

std::string UtcTimestamp() {
  const std::time_t now =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

json ConfigJson(const RunConfig& config) {
  const FilterConfig& f = config.filter;
  return {
      {"phi", f.phi_db},
      {"band", {f.f_min_hz, f.f_max_hz}},
      {"psycho", f.psycho_enabled},
      {"bandpass", f.bandpass_enabled},
      {"frame_len", f.frame_len},
      {"hop", f.hop},
      {"jobs", config.jobs},
      {"dump_spectra", config.dump_spectra},
      {"config_file", config.config_path},
  };
}

AudioBuffer LoadInput(const fs::path& path) {
  return RequireRate(ReadWav(path), kPipelineRate);
}

// Frame-major CSV with a header row of bin center frequencies.
template <typename Matrix>
void WriteMatrixCsv(std::ostream& os, const Matrix& m, const BinLayout& layout) {
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    if (k > 0) os << ',';
    os << FormatNumber(layout.Frequency(static_cast<int>(k)));
  }
  os << '\n';
  for (Eigen::Index n = 0; n < m.rows(); ++n) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k > 0) os << ',';
      os << FormatNumber(static_cast<double>(m(n, k)));
    }
    os << '\n';
  }
}

void WriteCsvFile(const fs::path& path, const auto& matrix,
                  const BinLayout& layout) {
  std::ofstream file(path, std::ios::trunc);
  if (!file) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  WriteMatrixCsv(file, matrix, layout);
  if (!file) throw Error(ErrorKind::kIo, "write failed: " + path.string());
}

bool IsWav(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".wav";
}

struct Job {
  fs::path input;
  fs::path output;
};

// Files map to out/<name>; directories are walked and mirrored below out/.
std::vector<Job> PlanJobs(const RunConfig& config) {
  std::vector<Job> jobs;
  for (const std::string& arg : config.inputs) {
    const fs::path input(arg);
    std::error_code ec;
    if (fs::is_directory(input, ec)) {
      std::vector<fs::path> found;
      for (const auto& entry : fs::recursive_directory_iterator(input)) {
        if (entry.is_regular_file() && IsWav(entry.path())) {
          found.push_back(entry.path());
        }
      }
      std::sort(found.begin(), found.end());
      for (const fs::path& p : found) {
        jobs.push_back({p, config.out_dir / fs::relative(p, input)});
      }
    } else {
      jobs.push_back({input, config.out_dir / input.filename()});
    }
  }
  if (jobs.empty()) throw UsageError("no input files");

  std::set<fs::path> outputs;
  for (const Job& job : jobs) {
    if (!outputs.insert(job.output.lexically_normal()).second) {
      throw UsageError("two inputs map to the same output " +
                       job.output.string());
    }
    std::error_code ec;
    if (fs::exists(job.output, ec) && fs::equivalent(job.input, job.output, ec)) {
      throw UsageError("output would overwrite input " + job.input.string());
    }
  }
  return jobs;
}

json ProcessFile(const Job& job, const RunConfig& config) {
  const FilterConfig& f = config.filter;
  json record = {
      {"input", job.input.generic_string()},
      {"output", job.output.generic_string()},
      {"phi", f.phi_db},
      {"band", {f.f_min_hz, f.f_max_hz}},
      {"psycho", f.psycho_enabled},
      {"bandpass", f.bandpass_enabled},
      {"config", ConfigJson(config)},
  };
  try {
    const AudioBuffer audio = LoadInput(job.input);
    const FilterResult result = DompteurFilter(audio, f);
    fs::create_directories(job.output.parent_path());
    WriteWav(result.audio, job.output);

    const BinLayout layout{f.frame_len, audio.sample_rate};
    int out_of_band = 0;
    if (f.bandpass_enabled) {
      for (int k = 0; k < layout.num_bins(); ++k) {
        if (!InBand(layout, k, f.f_min_hz, f.f_max_hz)) ++out_of_band;
      }
    }
    if (config.dump_spectra) {
      fs::path dump = job.output;
      dump.replace_extension(".spectra.csv");
      WriteCsvFile(dump, AnalysisLevels(Stft(audio, f.frame_len, f.hop)), layout);
      record["spectra"] = dump.generic_string();
    }
    record["status"] = "ok";
    record["samples"] = audio.size();
    record["frames"] = result.mask.num_frames();
    record["bins"] = result.mask.num_bins();
    record["masked_fraction"] = result.mask.ZeroFraction();
    record["band_removed_fraction"] =
        static_cast<double>(out_of_band) / layout.num_bins();
  } catch (const Error& e) {
    record["status"] = "error";
    record["error_kind"] = std::string(ErrorKindName(e.kind()));
    record["error"] = e.what();
  } catch (const std::exception& e) {
    record["status"] = "error";
    record["error_kind"] = "io";
    record["error"] = e.what();
  }
  record["timestamp"] = UtcTimestamp();
  return record;
}

int RunFilter(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.out_dir.empty()) throw UsageError("filter needs --out <dir>");
  const std::vector<Job> jobs = PlanJobs(config);

  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    err << "error: cannot create " << config.out_dir << ": " << ec.message() << '\n';
    return kExitFailure;
  }

  std::vector<json> records(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      records[i] = ProcessFile(jobs[i], config);
    }
  };
  const size_t workers =
      std::min(jobs.size(), static_cast<size_t>(std::max(config.jobs, 1)));
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  const fs::path manifest = config.out_dir / kManifestName;
  std::ofstream file(manifest, std::ios::trunc);
  if (!file) {
    err << "error: cannot write " << manifest << '\n';
    return kExitFailure;
  }
  int failed = 0;
  for (const json& record : records) {
    file << record.dump() << '\n';
    if (record["status"] != "ok") {
      ++failed;
      err << "error: " << record["input"].get<std::string>() << ": "
          << record["error"].get<std::string>() << '\n';
    }
  }
  out << "processed " << records.size() - failed << "/" << records.size()
      << " files, manifest " << manifest.generic_string() << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

// Shared body of `thresholds` and `mask`.
int RunMatrixDump(const RunConfig& config, bool thresholds_view,
                  std::ostream& out, std::ostream& err) {
  if (config.inputs.size() != 1) {
    throw UsageError("expected exactly one input file");
  }
  const fs::path input(config.inputs.front());
  const FilterConfig& f = config.filter;
  try {
    const AudioBuffer audio = LoadInput(input);
    const Spectrogram spec = Stft(audio, f.frame_len, f.hop);
    const HearingThresholds thresholds = ComputeThresholds(spec);

    std::ostringstream csv;
    if (thresholds_view) {
      WriteMatrixCsv(csv, thresholds.levels, spec.layout());
    } else {
      const SpectralMask mask =
          f.psycho_enabled
              ? ComputeMask(spec, thresholds, f.phi_db)
              : SpectralMask{BitMatrix::Ones(spec.bins.rows(), spec.bins.cols())};
      WriteMatrixCsv(csv, mask.bits, spec.layout());
    }

    if (config.out_dir.empty()) {
      out << csv.str();
      return kExitOk;
    }
    fs::create_directories(config.out_dir);
    const fs::path target =
        config.out_dir / (input.stem().string() +
                          (thresholds_view ? ".thresholds.csv" : ".mask.csv"));
    std::ofstream file(target, std::ios::trunc);
    file << csv.str();
    if (!file) throw Error(ErrorKind::kIo, "write failed: " + target.string());
    out << target.generic_string() << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << input.generic_string() << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

// "<id> word word ..." per line; blank lines are ignored.
std::vector<std::pair<std::string, std::string>> ReadTranscripts(
    const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path.string());
  std::vector<std::pair<std::string, std::string>> lines;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream s(line);
    std::string id;
    if (!(s >> id)) continue;
    std::string rest;
    std::getline(s, rest);
    lines.emplace_back(id, rest);
  }
  return lines;
}

int RunWer(const fs::path& ref_path, const fs::path& hyp_path,
           std::ostream& out, std::ostream& err) {
  std::vector<std::pair<std::string, std::string>> refs;
  std::map<std::string, std::string> hyps;
  try {
    refs = ReadTranscripts(ref_path);
    for (auto& [id, text] : ReadTranscripts(hyp_path)) hyps[id] = text;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  std::set<std::string> ref_ids;
  for (const auto& entry : refs) ref_ids.insert(entry.first);
  if (ref_ids.size() != refs.size() || ref_ids.size() != hyps.size() ||
      !std::all_of(ref_ids.begin(), ref_ids.end(),
                   [&](const std::string& id) { return hyps.contains(id); })) {
    err << "error: reference and hypothesis utterance ids do not match\n";
    return kExitFailure;
  }

  int failed = 0;
  long errors = 0, subs = 0, dels = 0, ins = 0, words = 0;
  double wer_sum = 0.0;
  int scored = 0;
  for (const auto& [id, text] : refs) {
    try {
      const WerBreakdown w = Wer(text, hyps.at(id));
      out << json{{"file", id},          {"wer", w.wer_percent},
                  {"S", w.substitutions}, {"D", w.deletions},
                  {"I", w.insertions},    {"N", w.reference_len}}
                 .dump()
          << '\n';
      errors += w.errors();
      subs += w.substitutions;
      dels += w.deletions;
      ins += w.insertions;
      words += w.reference_len;
      wer_sum += w.wer_percent;
      ++scored;
    } catch (const Error& e) {
      ++failed;
      out << json{{"file", id}, {"status", "error"}, {"error", e.what()}}.dump()
          << '\n';
    }
  }
  json aggregate = {{"aggregate", true}, {"count", scored}};
  if (scored > 0) {
    aggregate["wer"] = 100.0 * static_cast<double>(errors) / static_cast<double>(words);
    aggregate["mean_wer"] = wer_sum / scored;
    aggregate["S"] = subs;
    aggregate["D"] = dels;
    aggregate["I"] = ins;
    aggregate["N"] = words;
  }
  out << aggregate.dump() << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

int RunSnrseg(const std::vector<std::string>& originals,
              const std::vector<std::string>& modified, std::ostream& out) {
  if (originals.empty() || originals.size() != modified.size()) {
    throw UsageError("--original and --modified need the same, non-zero number of files");
  }
  int failed = 0;
  int scored = 0;
  double sum = 0.0;
  for (size_t i = 0; i < originals.size(); ++i) {
    json record = {{"file", modified[i]}, {"original", originals[i]}};
    try {
      const SnrsegResult r = Snrseg(ReadWav(originals[i]), ReadWav(modified[i]));
      record["snrseg_db"] = r.snrseg_db;
      record["segments_used"] = r.segments_used;
      record["segments_skipped"] = r.segments_skipped;
      sum += r.snrseg_db;
      ++scored;
    } catch (const Error& e) {
      ++failed;
      record["status"] = "error";
      record["error_kind"] = std::string(ErrorKindName(e.kind()));
      record["error"] = e.what();
    }
    out << record.dump() << '\n';
  }
  json aggregate = {{"aggregate", true}, {"count", scored}};
  if (scored > 0) aggregate["snrseg_db"] = sum / scored;
  out << aggregate.dump() << '\n';
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

std::pair<double, double> ParseBand(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    throw UsageError("--band expects <min:max> in Hz, got '" + text + "'");
  }
  try {
    size_t used_lo = 0, used_hi = 0;
    const std::string lo = text.substr(0, colon);
    const std::string hi = text.substr(colon + 1);
    const double f_min = std::stod(lo, &used_lo);
    const double f_max = std::stod(hi, &used_hi);
    if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument(text);
    return {f_min, f_max};
  } catch (const std::logic_error&) {
    throw UsageError("--band expects <min:max> in Hz, got '" + text + "'");
  }
}

std::string ManifestDigest(const fs::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + manifest.string());
  uint64_t hash = 14695981039346656037ull;
  auto mix = [&hash](const std::string& s) {
    for (unsigned char c : s) {
      hash ^= c;
      hash *= 1099511628211ull;
    }
  };
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json record = json::parse(line);
    record.erase("timestamp");
    mix(record.dump());
    mix("\n");
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << hash;
  return s.str();
}

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  std::string band = "200:7000";
  bool no_psycho = false;
  bool no_bandpass = false;
  std::string out_dir;

  CLI::App app{"Psychoacoustic and band-pass input hardening for ASR front ends",
               "dompteur"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key = value config file (TOML style)");
  app.add_option("--phi", config.filter.phi_db,
                 "Margin in dB added to the hearing thresholds")
      ->capture_default_str();
  app.add_option("--band", band, "Band-pass cut-offs <min:max> in Hz")
      ->capture_default_str();
  app.add_flag("--no-psycho", no_psycho, "Disable psychoacoustic filtering");
  app.add_flag("--no-bandpass", no_bandpass, "Disable the band-pass");
  app.add_option("--frame-len", config.filter.frame_len, "STFT frame length")
      ->capture_default_str();
  app.add_option("--hop", config.filter.hop, "STFT hop")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--jobs", config.jobs, "Parallel workers")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--dump-spectra", config.dump_spectra,
               "Also write dB magnitude CSVs next to the outputs");

  CLI::App* filter = app.add_subcommand("filter", "Filter WAV files or directories");
  filter->add_option("inputs", config.inputs, "WAV files or directories");

  CLI::App* thresholds =
      app.add_subcommand("thresholds", "Hearing thresholds H as CSV");
  thresholds->add_option("input", config.inputs, "WAV file");
  CLI::App* mask = app.add_subcommand("mask", "Spectral mask M as CSV");
  mask->add_option("input", config.inputs, "WAV file");

  CLI::App* metrics = app.add_subcommand("metrics", "Evaluation metrics");
  metrics->require_subcommand(1);
  std::string ref_path, hyp_path;
  CLI::App* wer = metrics->add_subcommand("wer", "Word error rate");
  wer->add_option("--ref", ref_path, "Reference transcripts (<id> words...)")
      ->required();
  wer->add_option("--hyp", hyp_path, "Hypothesis transcripts (<id> words...)")
      ->required();
  std::vector<std::string> originals, modified;
  CLI::App* snrseg = metrics->add_subcommand("snrseg", "Segmental SNR");
  snrseg->add_option("--original", originals, "Original WAV files");
  snrseg->add_option("--modified", modified, "Modified WAV files, same order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.out_dir = out_dir;
    config.filter.psycho_enabled = !no_psycho;
    config.filter.bandpass_enabled = !no_bandpass;
    std::tie(config.filter.f_min_hz, config.filter.f_max_hz) = ParseBand(band);
    if (const CLI::Option* opt = app.get_option("--config"); opt->count() > 0) {
      config.config_path = opt->as<std::string>();
    }
    if (!metrics->parsed()) {
      try {
        config.filter.Validate(kPipelineRate);
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }

    if (filter->parsed()) return RunFilter(config, out, err);
    if (thresholds->parsed()) return RunMatrixDump(config, true, out, err);
    if (mask->parsed()) return RunMatrixDump(config, false, out, err);
    if (wer->parsed()) return RunWer(ref_path, hyp_path, out, err);
    return RunSnrseg(originals, modified, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace dompteur::cli
