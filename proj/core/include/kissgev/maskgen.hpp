// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kissgev/array.hpp"
#include "kissgev/stft.hpp"

namespace kissgev {

// Contiguous partition of the one-sided spectrum into bands, stored as
// inclusive (lower, upper) bin bounds. Bands never overlap and together
// cover every bin from 0 to N/2.
struct Filterbank {
  struct Band {
    int lower = 0;
    int upper = 0;  // inclusive
  };
  std::vector<Band> bands;

  int num_bands() const { return static_cast<int>(bands.size()); }
  int band_of(int bin) const;

  // Checks the partition covers exactly {0, ..., bins - 1}.
  void validate(int bins) const;
};

// Two-band filterbank split at `separator`: band 1 covers bins
// [0, separator - 1] and band 2 covers [separator, N/2].
Filterbank make_filterbank(int frame_size, int separator);

// Ratio of steered beam power to average channel power. per_band holds
// R_b(t); expanded holds R(t, f), constant across the bins of each band.
struct RatioMap {
  Eigen::MatrixXd per_band;  // bands x frames
  Eigen::MatrixXd expanded;  // frames x bins
};

// R_b(t) = sum_f H_b(f) |sum_d W_d(f) Y_d(t,f)|^2
//        / (D sum_f H_b(f) sum_d |Y_d(t,f)|^2).
// Unit-modulus weights keep the ratio in [0, 1] (Cauchy-Schwarz); bands
// with zero energy in a frame yield R_b(t) = 0.
RatioMap power_ratio(const MultichannelSpectrogram& spec,
                     const SteeringVector& steering,
                     const Filterbank& filterbank);

struct MaskThresholds {
  Eigen::VectorXd target;  // T_X(f)
  Eigen::VectorXd noise;   // T_N(f)
};

// Nearest-rank percentile thresholds per bin, over all frames. The target
// threshold is the (100 - alpha)-th percentile; the noise threshold mirrors
// the same rank from the bottom of the sorted values, so that on distinct
// data both masks select exactly floor(alpha * T / 100) frames.
MaskThresholds mask_thresholds(const RatioMap& ratio, double alpha_percent);

enum class MaskKind { Binary, Soft };

// Time-frequency mask with values in [0, 1]; binary masks hold only {0, 1}.
struct TFMask {
  Eigen::MatrixXd values;  // frames x bins
  MaskKind kind = MaskKind::Binary;
};

struct MaskPair {
  TFMask target;  // M_X
  TFMask noise;   // M_N
};

// M_X(t,f) = 1 iff R(t,f) > T_X(f); M_N(t,f) = 1 iff R(t,f) < T_N(f).
// Strict inequalities on both sides keep the masks disjoint.
MaskPair binary_masks(const RatioMap& ratio, const MaskThresholds& thresholds);

}  // namespace kissgev
