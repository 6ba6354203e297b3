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

#ifndef DOMPTEUR_SRC_FFT_HPP_
#define DOMPTEUR_SRC_FFT_HPP_

#include <complex>
#include <span>

#include <fftw3.h>

namespace dompteur::internal {

// Real <-> half-complex transforms of a fixed length backed by FFTW. Plans are
// created with FFTW_ESTIMATE so results do not depend on timing. Not shareable
// between threads; create one per call site.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();

  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return size_; }

  // in: size() reals; out: size() / 2 + 1 bins, unnormalized.
  void Forward(std::span<const double> in, std::span<std::complex<double>> out);

  // in: size() / 2 + 1 bins; out: size() reals, scaled by 1 / size(). The
  // imaginary parts of the DC and Nyquist bins are ignored.
  void Inverse(std::span<const std::complex<double>> in, std::span<double> out);

 private:
  int size_;
  double* real_ = nullptr;
  fftw_complex* spectrum_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan inverse_ = nullptr;
};

}  // namespace dompteur::internal

#endif  // DOMPTEUR_SRC_FFT_HPP_
