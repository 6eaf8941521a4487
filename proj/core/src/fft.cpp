// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <mutex>

#include "kissgev/error.hpp"

namespace kissgev::detail {
namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

RealFft::RealFft(int size) : size_(size) {
  if (size < 2) throw InvalidArgument("FFT size must be at least 2");
  std::lock_guard<std::mutex> lock(planner_mutex());
  real_buf_ = fftw_alloc_real(static_cast<std::size_t>(size));
  complex_buf_ = fftw_alloc_complex(static_cast<std::size_t>(size / 2 + 1));
  plan_forward_ = fftw_plan_dft_r2c_1d(
      size, real_buf_, static_cast<fftw_complex*>(complex_buf_), FFTW_ESTIMATE);
  plan_inverse_ = fftw_plan_dft_c2r_1d(
      size, static_cast<fftw_complex*>(complex_buf_), real_buf_, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inverse_));
  fftw_free(real_buf_);
  fftw_free(complex_buf_);
}

void RealFft::forward(const double* in, std::complex<double>* out) {
  std::memcpy(real_buf_, in, sizeof(double) * static_cast<std::size_t>(size_));
  fftw_execute(static_cast<fftw_plan>(plan_forward_));
  std::memcpy(out, complex_buf_,
              sizeof(std::complex<double>) * static_cast<std::size_t>(bins()));
}

void RealFft::inverse(const std::complex<double>* in, double* out) {
  std::memcpy(complex_buf_, in,
              sizeof(std::complex<double>) * static_cast<std::size_t>(bins()));
  fftw_execute(static_cast<fftw_plan>(plan_inverse_));
  const double scale = 1.0 / size_;
  for (int n = 0; n < size_; ++n) out[n] = real_buf_[n] * scale;
}

}  // namespace kissgev::detail
