// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "convolve.hpp"

#include <complex>

#include "fft.hpp"
#include "kissgev/error.hpp"

namespace kissgev::detail {

Eigen::VectorXd fft_convolve(const Eigen::VectorXd& x, const Eigen::VectorXd& h) {
  if (x.size() == 0 || h.size() == 0) {
    throw InvalidArgument("convolution inputs must be non-empty");
  }
  const Eigen::Index out_len = x.size() + h.size() - 1;
  Eigen::Index n = 2;
  while (n < out_len) n *= 2;

  RealFft fft(static_cast<int>(n));
  Eigen::VectorXd padded = Eigen::VectorXd::Zero(n);
  Eigen::VectorXcd xf(fft.bins()), hf(fft.bins());

  padded.head(x.size()) = x;
  fft.forward(padded.data(), xf.data());
  padded.setZero();
  padded.head(h.size()) = h;
  fft.forward(padded.data(), hf.data());

  xf.array() *= hf.array();
  Eigen::VectorXd full(n);
  fft.inverse(xf.data(), full.data());
  return full.head(out_len);
}

}  // namespace kissgev::detail
