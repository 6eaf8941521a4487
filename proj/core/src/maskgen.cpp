// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/maskgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kissgev/error.hpp"

namespace kissgev {

int Filterbank::band_of(int bin) const {
  for (int b = 0; b < num_bands(); ++b) {
    if (bin >= bands[static_cast<std::size_t>(b)].lower &&
        bin <= bands[static_cast<std::size_t>(b)].upper) {
      return b;
    }
  }
  throw InvalidArgument("bin " + std::to_string(bin) + " is outside the filterbank");
}

void Filterbank::validate(int bins) const {
  if (bands.empty()) throw InvalidArgument("filterbank has no bands");
  if (bands.front().lower != 0) throw InvalidArgument("filterbank must start at bin 0");
  for (int b = 0; b < num_bands(); ++b) {
    const Band& band = bands[static_cast<std::size_t>(b)];
    if (band.upper < band.lower) throw InvalidArgument("filterbank band is empty");
    if (b + 1 < num_bands() &&
        bands[static_cast<std::size_t>(b) + 1].lower != band.upper + 1) {
      throw InvalidArgument("filterbank bands must be contiguous and non-overlapping");
    }
  }
  if (bands.back().upper != bins - 1) {
    throw InvalidArgument("filterbank must cover the spectrum up to bin " +
                          std::to_string(bins - 1));
  }
}

Filterbank make_filterbank(int frame_size, int separator) {
  if (frame_size <= 0 || frame_size % 2 != 0) {
    throw InvalidArgument("frame_size must be a positive even integer");
  }
  const int nyquist = frame_size / 2;
  if (separator < 1 || separator > nyquist) {
    throw InvalidArgument("filterbank separator must lie in [1, " +
                          std::to_string(nyquist) + "], got " +
                          std::to_string(separator));
  }
  Filterbank fb;
  fb.bands.push_back({0, separator - 1});
  fb.bands.push_back({separator, nyquist});
  return fb;
}

RatioMap power_ratio(const MultichannelSpectrogram& spec,
                     const SteeringVector& steering,
                     const Filterbank& filterbank) {
  const int D = spec.num_channels();
  const int bins = spec.bins();
  const Eigen::Index frames = spec.frames();
  if (D < 1 || frames < 1) throw InvalidArgument("spectrogram is empty");
  if (steering.num_mics() != D) {
    throw InvalidArgument("steering vector has " + std::to_string(steering.num_mics()) +
                          " mics but the spectrogram has " + std::to_string(D) +
                          " channels");
  }
  if (steering.bins() != bins) {
    throw InvalidArgument("steering vector bin count does not match the spectrogram");
  }
  filterbank.validate(bins);

  const int B = filterbank.num_bands();
  RatioMap ratio;
  ratio.per_band.setZero(B, frames);

  Eigen::MatrixXd beam_power = Eigen::MatrixXd::Zero(B, frames);
  Eigen::MatrixXd avg_power = Eigen::MatrixXd::Zero(B, frames);
  Eigen::VectorXcd steered(frames);
  for (int f = 0; f < bins; ++f) {
    const int b = filterbank.band_of(f);
    steered.setZero();
    for (int d = 0; d < D; ++d) {
      steered += steering.weights(d, f) * spec.channels[static_cast<std::size_t>(d)].col(f);
      avg_power.row(b) += spec.channels[static_cast<std::size_t>(d)]
                              .col(f)
                              .cwiseAbs2()
                              .transpose();
    }
    beam_power.row(b) += steered.cwiseAbs2().transpose();
  }

  for (int b = 0; b < B; ++b) {
    for (Eigen::Index t = 0; t < frames; ++t) {
      const double den = D * avg_power(b, t);
      ratio.per_band(b, t) = den > 0.0 ? beam_power(b, t) / den : 0.0;
    }
  }

  ratio.expanded.resize(frames, bins);
  for (int f = 0; f < bins; ++f) {
    ratio.expanded.col(f) = ratio.per_band.row(filterbank.band_of(f)).transpose();
  }
  return ratio;
}

MaskThresholds mask_thresholds(const RatioMap& ratio, double alpha_percent) {
  if (!(alpha_percent > 0.0 && alpha_percent < 50.0)) {
    throw InvalidArgument("alpha must lie in (0, 50) percent, got " +
                          std::to_string(alpha_percent));
  }
  const Eigen::Index frames = ratio.expanded.rows();
  const int bins = static_cast<int>(ratio.expanded.cols());
  if (frames < 2) {
    throw InvalidArgument("percentile thresholds need at least 2 frames, got " +
                          std::to_string(frames));
  }

  // Nearest-rank index of the upper percentile, 1-based; the noise
  // threshold takes the mirrored rank from the bottom.
  const auto rank = static_cast<Eigen::Index>(
      std::ceil((100.0 - alpha_percent) * static_cast<double>(frames) / 100.0));
  const Eigen::Index upper = std::clamp<Eigen::Index>(rank, 1, frames) - 1;
  const Eigen::Index lower = frames - 1 - upper;

  MaskThresholds th;
  th.target.resize(bins);
  th.noise.resize(bins);
  std::vector<double> column(static_cast<std::size_t>(frames));
  for (int f = 0; f < bins; ++f) {
    for (Eigen::Index t = 0; t < frames; ++t) {
      column[static_cast<std::size_t>(t)] = ratio.expanded(t, f);
    }
    std::sort(column.begin(), column.end());
    th.target(f) = column[static_cast<std::size_t>(upper)];
    th.noise(f) = column[static_cast<std::size_t>(lower)];
  }
  return th;
}

MaskPair binary_masks(const RatioMap& ratio, const MaskThresholds& thresholds) {
  const Eigen::Index frames = ratio.expanded.rows();
  const int bins = static_cast<int>(ratio.expanded.cols());
  if (thresholds.target.size() != bins || thresholds.noise.size() != bins) {
    throw InvalidArgument("threshold vectors do not match the ratio map bins");
  }

  MaskPair masks;
  masks.target.kind = MaskKind::Binary;
  masks.noise.kind = MaskKind::Binary;
  masks.target.values.setZero(frames, bins);
  masks.noise.values.setZero(frames, bins);
  for (int f = 0; f < bins; ++f) {
    for (Eigen::Index t = 0; t < frames; ++t) {
      const double r = ratio.expanded(t, f);
      if (r > thresholds.target(f)) masks.target.values(t, f) = 1.0;
      if (r < thresholds.noise(f)) masks.noise.values(t, f) = 1.0;
    }
  }
  return masks;
}

}  // namespace kissgev
