// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/oracle.hpp"

#include <cmath>
#include <string>

#include "kissgev/error.hpp"

namespace kissgev {

TFMask ideal_ratio_mask(const Eigen::MatrixXcd& target_spec,
                        const Eigen::MatrixXcd& interference_spec,
                        double exponent) {
  if (target_spec.rows() != interference_spec.rows() ||
      target_spec.cols() != interference_spec.cols()) {
    throw InvalidArgument("target and interference spectrograms differ in shape");
  }
  if (!(exponent > 0.0) || !std::isfinite(exponent)) {
    throw InvalidArgument("IRM exponent must be positive and finite");
  }

  TFMask mask;
  mask.kind = MaskKind::Soft;
  mask.values.resize(target_spec.rows(), target_spec.cols());
  for (Eigen::Index t = 0; t < target_spec.rows(); ++t) {
    for (Eigen::Index f = 0; f < target_spec.cols(); ++f) {
      const double px = std::norm(target_spec(t, f));
      const double pn = std::norm(interference_spec(t, f));
      const double total = px + pn;
      mask.values(t, f) = total > 0.0 ? std::pow(px / total, exponent) : 0.0;
    }
  }
  return mask;
}

AudioClip oracle_gev_enhance(const AudioClip& mixture, const AudioClip& target_ref,
                             const AudioClip& interference_ref,
                             const ArrayGeometry& geometry, const DoA& doa,
                             const EnhanceParams& params,
                             const OracleOptions& options, PipelineTrace* trace) {
  params.validate();
  mixture.validate();
  target_ref.validate();
  interference_ref.validate();
  geometry.validate();
  if (mixture.channels() != geometry.num_mics()) {
    throw InvalidArgument("mixture has " + std::to_string(mixture.channels()) +
                          " channels but the geometry has " +
                          std::to_string(geometry.num_mics()) + " microphones");
  }
  if (target_ref.sample_rate != mixture.sample_rate ||
      interference_ref.sample_rate != mixture.sample_rate) {
    throw InvalidArgument("reference sample rates differ from the mixture");
  }

  // Trim everything to the common length so the frame grids line up.
  const Eigen::Index common = std::min(
      {mixture.length(), target_ref.length(), interference_ref.length()});
  AudioClip mix{mixture.samples.leftCols(common), mixture.sample_rate};
  const AudioClip tgt{target_ref.samples.topRows(1).leftCols(common),
                      target_ref.sample_rate};
  const AudioClip itf{interference_ref.samples.topRows(1).leftCols(common),
                      interference_ref.sample_rate};

  const MultichannelSpectrogram mix_spec = stft(mix, params.stft);
  const MultichannelSpectrogram tgt_spec = stft(tgt, params.stft);
  const MultichannelSpectrogram itf_spec = stft(itf, params.stft);

  MaskPair masks;
  masks.target =
      ideal_ratio_mask(tgt_spec.channels[0], itf_spec.channels[0], options.exponent);
  if (options.noise_mask == OracleOptions::NoiseMask::Complement) {
    masks.noise.kind = MaskKind::Soft;
    masks.noise.values = 1.0 - masks.target.values.array();
  } else {
    masks.noise = ideal_ratio_mask(itf_spec.channels[0], tgt_spec.channels[0],
                                   options.exponent);
  }

  SCMSet scms;
  scms.phi_xx = estimate_scm(mix_spec, masks.target);
  scms.phi_nn = estimate_scm(mix_spec, masks.noise);

  const SteeringVector steering = reference_steering(
      geometry, doa, mixture.sample_rate, params.stft.frame_size);
  BeamformerWeights weights = solve_gev(scms, steering, params.loading);
  weights.g_ban = ban_gain(weights, apply_loading(scms.phi_nn, params.loading));

  const int D = mix.channels();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(D));
  std::vector<int> fallback;
  for (int f = 0; f < mix_spec.bins(); ++f) {
    if (masks.target.values.col(f).sum() == 0.0 ||
        scms.phi_nn[static_cast<std::size_t>(f)].real().trace() == 0.0) {
      weights.f_gev.row(f) = steering.weights.col(f).adjoint() * inv_sqrt_d;
      weights.g_ban(f) = inv_sqrt_d;
      fallback.push_back(f);
    }
  }

  AudioClip out = istft(apply_beamformer(mix_spec, weights));

  if (trace) {
    trace->steering = steering;
    trace->masks = masks;
    trace->weights = weights;
    trace->ds_fallback_bins = std::move(fallback);
  }
  return out;
}

}  // namespace kissgev
