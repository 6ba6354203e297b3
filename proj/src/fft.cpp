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

#include "fft.hpp"

#include <algorithm>
#include <cassert>
#include <mutex>
#include <new>

namespace dompteur::internal {

namespace {

// Only fftw_execute is thread-safe; planning and destruction are not.
std::mutex& PlannerMutex() {
  static std::mutex mutex;
  return mutex;
}

}  // namespace

RealFft::RealFft(int size) : size_(size) {
  const std::lock_guard<std::mutex> lock(PlannerMutex());
  real_ = fftw_alloc_real(static_cast<size_t>(size));
  spectrum_ = fftw_alloc_complex(static_cast<size_t>(size / 2 + 1));
  if (real_ == nullptr || spectrum_ == nullptr) {
    fftw_free(real_);
    fftw_free(spectrum_);
    throw std::bad_alloc();
  }
  forward_ = fftw_plan_dft_r2c_1d(size, real_, spectrum_, FFTW_ESTIMATE);
  inverse_ = fftw_plan_dft_c2r_1d(size, spectrum_, real_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  const std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(forward_);
  fftw_destroy_plan(inverse_);
  fftw_free(real_);
  fftw_free(spectrum_);
}

void RealFft::Forward(std::span<const double> in,
                      std::span<std::complex<double>> out) {
  assert(static_cast<int>(in.size()) == size_);
  assert(static_cast<int>(out.size()) == size_ / 2 + 1);
  std::copy(in.begin(), in.end(), real_);
  fftw_execute(forward_);
  for (int k = 0; k <= size_ / 2; ++k) {
    out[k] = {spectrum_[k][0], spectrum_[k][1]};
  }
}

void RealFft::Inverse(std::span<const std::complex<double>> in,
                      std::span<double> out) {
  assert(static_cast<int>(in.size()) == size_ / 2 + 1);
  assert(static_cast<int>(out.size()) == size_);
  for (int k = 0; k <= size_ / 2; ++k) {
    spectrum_[k][0] = in[k].real();
    spectrum_[k][1] = in[k].imag();
  }
  // c2r overwrites its input, which is our own scratch buffer.
  fftw_execute(inverse_);
  const double scale = 1.0 / size_;
  for (int i = 0; i < size_; ++i) out[i] = real_[i] * scale;
}

}  // namespace dompteur::internal
