// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Dense>

namespace kissgev {

// Multichannel time-domain audio. Samples are channel-major (one row per
// channel) and normalized so that full-scale integer PCM maps to [-1, 1].
struct AudioClip {
  Eigen::MatrixXd samples;  // channels x samples
  int sample_rate = 0;

  int channels() const { return static_cast<int>(samples.rows()); }
  Eigen::Index length() const { return samples.cols(); }

  // Row `channel` as a mono clip at the same rate.
  AudioClip channel(int channel) const;

  // Throws InvalidArgument if the clip is empty or the rate non-positive,
  // NumericError if any sample is NaN or infinite.
  void validate() const;
};

}  // namespace kissgev
