// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include "kissgev/beamform.hpp"

namespace kissgev {

struct OracleOptions {
  // Exponent applied to the power ratio |X|^2 / (|X|^2 + |N|^2).
  double exponent = 0.5;
  // Noise weighting: 1 - IRM (complement) or the IRM with the roles of
  // target and interference swapped.
  enum class NoiseMask { Complement, Swapped };
  NoiseMask noise_mask = NoiseMask::Complement;
};

// Soft mask (|X|^2 / (|X|^2 + |N|^2))^exponent from single-channel clean
// spectrograms, defined as 0 where both are silent.
TFMask ideal_ratio_mask(const Eigen::MatrixXcd& target_spec,
                        const Eigen::MatrixXcd& interference_spec,
                        double exponent = 0.5);

// GEV + BAN enhancement driven by oracle soft masks computed at channel 0
// of the clean reverberant references. The references must be time-aligned
// with the mixture and share its sample rate.
AudioClip oracle_gev_enhance(const AudioClip& mixture, const AudioClip& target_ref,
                             const AudioClip& interference_ref,
                             const ArrayGeometry& geometry, const DoA& doa,
                             const EnhanceParams& params,
                             const OracleOptions& options = {},
                             PipelineTrace* trace = nullptr);

}  // namespace kissgev
