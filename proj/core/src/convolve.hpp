// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Dense>

namespace kissgev::detail {

// Full linear convolution (length x.size() + h.size() - 1) via the FFT.
Eigen::VectorXd fft_convolve(const Eigen::VectorXd& x, const Eigen::VectorXd& h);

}  // namespace kissgev::detail
