// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>

namespace kissgev::detail {

// Thin RAII wrapper over FFTW's one-dimensional real transforms.
// Plan creation is serialized internally (FFTW planning is not thread
// safe); execution is safe from one thread per object.
class RealFft {
 public:
  explicit RealFft(int size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  int size() const { return size_; }
  int bins() const { return size_ / 2 + 1; }

  // Time domain (size samples) -> one-sided spectrum (size/2 + 1 bins).
  void forward(const double* in, std::complex<double>* out);

  // One-sided spectrum -> time domain, scaled by 1/size so that
  // inverse(forward(x)) == x.
  void inverse(const std::complex<double>* in, double* out);

 private:
  int size_;
  void* plan_forward_;
  void* plan_inverse_;
  double* real_buf_;
  void* complex_buf_;
};

}  // namespace kissgev::detail
