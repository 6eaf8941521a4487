// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/stft.hpp"

#include <cmath>
#include <string>

#include "fft.hpp"
#include "kissgev/error.hpp"

namespace kissgev {

Eigen::VectorXd sqrt_hann_window(int length) {
  Eigen::VectorXd w(length);
  for (int n = 0; n < length; ++n) {
    w(n) = std::sin(M_PI * n / length);
  }
  return w;
}

void StftConfig::validate() const {
  if (frame_size <= 0 || frame_size % 2 != 0) {
    throw InvalidArgument("stft.frame_size must be a positive even integer, got " +
                          std::to_string(frame_size));
  }
  if (hop <= 0 || frame_size % hop != 0) {
    throw InvalidArgument("stft.hop must be positive and divide frame_size");
  }
  if (hop > frame_size / 2) {
    throw InvalidArgument("stft.hop must not exceed frame_size / 2");
  }

  // Overlap-add of analysis * synthesis over all shifts must be constant.
  const Eigen::VectorXd w = sqrt_hann_window(frame_size);
  const int shifts = frame_size / hop;
  const double expected = 0.5 * shifts;
  for (int n = 0; n < hop; ++n) {
    double sum = 0.0;
    for (int k = 0; k < shifts; ++k) sum += w(n + k * hop) * w(n + k * hop);
    if (std::abs(sum - expected) > 1e-10) {
      throw InvalidArgument("window pair violates constant overlap-add");
    }
  }
}

MultichannelSpectrogram stft(const AudioClip& clip, const StftConfig& config) {
  config.validate();
  clip.validate();
  const int N = config.frame_size;
  if (clip.length() < N) {
    throw InvalidArgument("clip of " + std::to_string(clip.length()) +
                          " samples is shorter than one frame (" +
                          std::to_string(N) + ")");
  }

  const Eigen::Index frames = (clip.length() - N) / config.hop + 1;
  const int bins = config.bins();
  const Eigen::VectorXd window = sqrt_hann_window(N);

  MultichannelSpectrogram spec;
  spec.config = config;
  spec.sample_rate = clip.sample_rate;
  spec.channels.reserve(static_cast<std::size_t>(clip.channels()));

  detail::RealFft fft(N);
  Eigen::VectorXd frame(N);
  Eigen::VectorXcd bins_buf(bins);
  for (int d = 0; d < clip.channels(); ++d) {
    Eigen::MatrixXcd out(frames, bins);
    for (Eigen::Index t = 0; t < frames; ++t) {
      frame = clip.samples.row(d)
                  .segment(t * config.hop, N)
                  .transpose()
                  .cwiseProduct(window);
      fft.forward(frame.data(), bins_buf.data());
      out.row(t) = bins_buf.transpose();
    }
    spec.channels.push_back(std::move(out));
  }
  return spec;
}

AudioClip istft(const MultichannelSpectrogram& spec) {
  spec.config.validate();
  if (spec.channels.empty()) throw InvalidArgument("spectrogram has no channels");
  const int N = spec.config.frame_size;
  const int bins = spec.config.bins();
  const Eigen::Index frames = spec.frames();
  if (frames < 1) throw InvalidArgument("spectrogram has no frames");
  for (const auto& ch : spec.channels) {
    if (ch.rows() != frames || ch.cols() != bins) {
      throw InvalidArgument("spectrogram channels disagree on shape");
    }
  }

  const Eigen::VectorXd window = sqrt_hann_window(N);
  const Eigen::Index out_len = (frames - 1) * spec.config.hop + N;

  // Accumulated analysis*synthesis envelope, shared by all channels.
  Eigen::VectorXd envelope = Eigen::VectorXd::Zero(out_len);
  for (Eigen::Index t = 0; t < frames; ++t) {
    envelope.segment(t * spec.config.hop, N) += window.cwiseProduct(window);
  }
  const double floor = 1e-12 * envelope.maxCoeff();

  AudioClip clip;
  clip.sample_rate = spec.sample_rate;
  clip.samples.setZero(spec.num_channels(), out_len);

  detail::RealFft fft(N);
  Eigen::VectorXcd bins_buf(bins);
  Eigen::VectorXd frame(N);
  for (int d = 0; d < spec.num_channels(); ++d) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(out_len);
    for (Eigen::Index t = 0; t < frames; ++t) {
      bins_buf = spec.channels[d].row(t).transpose();
      fft.inverse(bins_buf.data(), frame.data());
      acc.segment(t * spec.config.hop, N) += frame.cwiseProduct(window);
    }
    for (Eigen::Index n = 0; n < out_len; ++n) {
      clip.samples(d, n) = envelope(n) > floor ? acc(n) / envelope(n) : 0.0;
    }
  }
  return clip;
}

}  // namespace kissgev
