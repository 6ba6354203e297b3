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

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "dompteur/audio_io.hpp"
#include "dompteur/error.hpp"
#include "dompteur/filtering.hpp"
#include "dompteur/metrics.hpp"
#include "dompteur/psychoacoustic.hpp"
#include "dompteur/spectral.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace dompteur {
namespace {

AudioBuffer ToBuffer(const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
                     int sample_rate) {
  if (samples.ndim() != 1) throw py::value_error("samples must be one-dimensional");
  AudioBuffer b;
  b.sample_rate = sample_rate;
  b.samples.assign(samples.data(), samples.data() + samples.size());
  return b;
}

py::array_t<double> ToArray(const AudioBuffer& b) {
  return py::array_t<double>(static_cast<py::ssize_t>(b.size()), b.samples.data());
}

SpectralMask ToMask(const BitMatrix& bits) { return SpectralMask{bits}; }

}  // namespace
}  // namespace dompteur

PYBIND11_MODULE(_core, m) {
  using namespace dompteur;
  m.doc() = "Psychoacoustic and band-pass input hardening for ASR front ends";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
  error_type.call_once_and_store_result([&m]() {
    return py::object(py::reinterpret_steal<py::object>(
        PyErr_NewException("dompteur._core.Error", PyExc_RuntimeError, nullptr)));
  });
  m.attr("Error") = error_type.get_stored();
  // Raised as Error(kind, message), kind being the snake_case error name.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(ErrorKindName(e.kind())), e.what());
      PyErr_SetObject(error_type.get_stored().ptr(), args.ptr());
    }
  });

  m.attr("DEFAULT_FRAME_LEN") = kDefaultFrameLen;
  m.attr("DEFAULT_HOP") = kDefaultHop;

  py::class_<Spectrogram>(m, "Spectrogram")
      .def(py::init<>())
      .def_readwrite("bins", &Spectrogram::bins)
      .def_readwrite("frame_len", &Spectrogram::frame_len)
      .def_readwrite("hop", &Spectrogram::hop)
      .def_readwrite("sample_rate", &Spectrogram::sample_rate)
      .def_property_readonly("num_frames", &Spectrogram::num_frames)
      .def_property_readonly("num_bins", &Spectrogram::num_bins);

  py::class_<WerBreakdown>(m, "WerBreakdown")
      .def_readonly("substitutions", &WerBreakdown::substitutions)
      .def_readonly("deletions", &WerBreakdown::deletions)
      .def_readonly("insertions", &WerBreakdown::insertions)
      .def_readonly("reference_len", &WerBreakdown::reference_len)
      .def_readonly("wer_percent", &WerBreakdown::wer_percent)
      .def_property_readonly("errors", &WerBreakdown::errors);

  py::class_<SnrsegResult>(m, "SnrsegResult")
      .def_readonly("snrseg_db", &SnrsegResult::snrseg_db)
      .def_readonly("segments_used", &SnrsegResult::segments_used)
      .def_readonly("segments_skipped", &SnrsegResult::segments_skipped)
      .def_readonly("segment_len", &SnrsegResult::segment_len);

  m.def(
      "read_wav",
      [](const std::filesystem::path& path) {
        const AudioBuffer b = ReadWav(path);
        return py::make_tuple(ToArray(b), b.sample_rate);
      },
      "path"_a, "Returns (samples, sample_rate); channels are averaged.");
  m.def(
      "write_wav",
      [](const std::filesystem::path& path, const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate) { WriteWav(ToBuffer(samples, sample_rate), path); },
      "path"_a, "samples"_a, "sample_rate"_a, "Writes 16-bit PCM mono.");

  m.def(
      "stft",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate, int frame_len, int hop) {
        return Stft(ToBuffer(samples, sample_rate), frame_len, hop);
      },
      "samples"_a, "sample_rate"_a, "frame_len"_a = kDefaultFrameLen, "hop"_a = kDefaultHop);
  m.def(
      "istft", [](const Spectrogram& spec, size_t out_len) { return ToArray(Istft(spec, out_len)); },
      "spec"_a, "out_len"_a);
  m.def("magnitude_db", &MagnitudeDb, "spec"_a);
  m.def("threshold_in_quiet", &ThresholdInQuiet, "freq_hz"_a);
  m.def("hz_to_bark", &HzToBark, "freq_hz"_a);
  m.def(
      "compute_thresholds",
      [](const Spectrogram& spec) { return RealMatrix(ComputeThresholds(spec).levels); },
      "spec"_a, "Hearing thresholds H(n, k) in dB.");
  m.def(
      "compute_mask",
      [](const Spectrogram& spec, double phi_db) {
        return BitMatrix(ComputeMask(spec, ComputeThresholds(spec), phi_db).bits);
      },
      "spec"_a, "phi_db"_a = 0.0, "Binary mask M(n, k), 1 keeps the bin.");
  m.def("band_pass", &BandPass, "spec"_a, "f_min_hz"_a, "f_max_hz"_a);
  m.def(
      "apply_mask",
      [](const Spectrogram& spec, const BitMatrix& mask) { return ApplyMask(spec, ToMask(mask)); },
      "spec"_a, "mask"_a);
  m.def(
      "dompteur_filter",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& samples,
         int sample_rate, double phi_db, double f_min_hz, double f_max_hz, bool psycho,
         bool bandpass, int frame_len, int hop) {
        FilterConfig config;
        config.phi_db = phi_db;
        config.f_min_hz = f_min_hz;
        config.f_max_hz = f_max_hz;
        config.psycho_enabled = psycho;
        config.bandpass_enabled = bandpass;
        config.frame_len = frame_len;
        config.hop = hop;
        FilterResult r;
        {
          const AudioBuffer b = ToBuffer(samples, sample_rate);
          py::gil_scoped_release release;
          r = DompteurFilter(b, config);
        }
        return py::make_tuple(ToArray(r.audio), BitMatrix(r.mask.bits));
      },
      "samples"_a, "sample_rate"_a, "phi_db"_a = 0.0, "f_min_hz"_a = 200.0,
      "f_max_hz"_a = 7000.0, "psycho"_a = true, "bandpass"_a = true,
      "frame_len"_a = kDefaultFrameLen, "hop"_a = kDefaultHop,
      "Returns (filtered samples, mask).");
  m.def(
      "mask_gradient_bandpass",
      [](const ComplexMatrix& grad, int frame_len, int sample_rate, double f_min_hz,
         double f_max_hz) {
        return MaskGradientBandPass(grad, BinLayout{frame_len, sample_rate}, f_min_hz, f_max_hz);
      },
      "grad"_a, "frame_len"_a, "sample_rate"_a, "f_min_hz"_a, "f_max_hz"_a);
  m.def(
      "mask_gradient_psycho",
      [](const ComplexMatrix& grad, const BitMatrix& mask) {
        return MaskGradientPsycho(grad, ToMask(mask));
      },
      "grad"_a, "mask"_a);
  m.def(
      "wer",
      [](const std::string& reference, const std::string& hypothesis) {
        return Wer(reference, hypothesis);
      },
      "reference"_a, "hypothesis"_a);
  m.def(
      "snrseg",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& original,
         const py::array_t<double, py::array::c_style | py::array::forcecast>& modified,
         int sample_rate) {
        return Snrseg(ToBuffer(original, sample_rate), ToBuffer(modified, sample_rate));
      },
      "original"_a, "modified"_a, "sample_rate"_a = 16000);
}
