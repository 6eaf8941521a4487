// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kissgev/audio.hpp"

namespace kissgev {

// Analysis/synthesis parameters. The sqrt-Hann pair overlap-adds to an
// exact constant whenever hop divides the frame size, which istft() and
// the perfect-reconstruction guarantee rely on.
struct StftConfig {
  int frame_size = 512;  // N, even
  int hop = 256;

  int bins() const { return frame_size / 2 + 1; }

  // Throws InvalidArgument unless frame_size is even and positive, hop
  // divides frame_size, hop <= frame_size/2, and the window pair satisfies
  // constant overlap-add within 1e-10.
  void validate() const;
};

// Complex STFT frames for every channel. Entry (t, f) of channel d is
// Y_d(t, f); bins run over the one-sided range {0, ..., N/2}, so bin f
// sits at f * sample_rate / N Hz.
struct MultichannelSpectrogram {
  std::vector<Eigen::MatrixXcd> channels;  // each frames x bins
  StftConfig config;
  int sample_rate = 0;

  int num_channels() const { return static_cast<int>(channels.size()); }
  Eigen::Index frames() const { return channels.empty() ? 0 : channels.front().rows(); }
  int bins() const { return config.bins(); }
};

// Periodic sqrt-Hann window: w[n] = sin(pi n / length).
Eigen::VectorXd sqrt_hann_window(int length);

// Frame count is floor((samples - N) / hop) + 1; clips shorter than one
// frame are rejected.
MultichannelSpectrogram stft(const AudioClip& clip, const StftConfig& config);

// Weighted overlap-add synthesis. Output length is (T - 1) * hop + N.
AudioClip istft(const MultichannelSpectrogram& spec);

}  // namespace kissgev
