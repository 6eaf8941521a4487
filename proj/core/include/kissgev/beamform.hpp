// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "kissgev/array.hpp"
#include "kissgev/maskgen.hpp"
#include "kissgev/stft.hpp"

namespace kissgev {

// One D x D Hermitian matrix per frequency bin.
using ScmStack = std::vector<Eigen::MatrixXcd>;

struct SCMSet {
  ScmStack phi_xx;
  ScmStack phi_nn;
};

// Masked outer-product sum Phi(f) = sum_t M(t,f) Y(t,f) Y(t,f)^H, left
// unnormalized (the GEV solution is invariant to the mask count). Accepts
// binary and soft masks with values in [0, 1].
ScmStack estimate_scm(const MultichannelSpectrogram& spec, const TFMask& mask);

// Relative diagonal loading applied to Phi_NN before inversion:
// Phi += relative * (tr(Phi)/D + absolute_floor) * I.
struct DiagonalLoading {
  double relative = 1e-6;
  double absolute_floor = 1e-12;
};

ScmStack apply_loading(const ScmStack& stack, const DiagonalLoading& loading);

struct BeamformerWeights {
  // Unit-norm weight vector per bin; row f holds F(f)^T.
  Eigen::MatrixXcd f_gev;  // bins x mics
  // Per-bin output gain; solve_gev() leaves it at 1, ban_gain() fills it.
  Eigen::VectorXd g_ban;   // bins
};

// Principal generalized eigenvector of (Phi_XX(f), Phi_NN(f)) per bin via
// Cholesky reduction of the Hermitian-definite pencil. Each vector is
// normalized to unit L2 norm with its phase rotated so the inner product
// with the delay-and-sum weight vector is real and non-negative.
BeamformerWeights solve_gev(const SCMSet& scms, const SteeringVector& steering,
                            const DiagonalLoading& loading = {});

// Blind analytic normalization gain per bin:
// g(f) = sqrt(F^H Phi_NN Phi_NN F) / (D^2 F^H Phi_NN F), 0 where the
// denominator vanishes. Invariant to scaling of Phi_NN.
Eigen::VectorXd ban_gain(const BeamformerWeights& weights, const ScmStack& phi_nn);

// Z(t,f) = g(f) F(f)^H Y(t,f); single-channel output spectrogram.
MultichannelSpectrogram apply_beamformer(const MultichannelSpectrogram& spec,
                                         const BeamformerWeights& weights);

// Z(t,f) = (1/D) sum_d W_d(f) Y_d(t,f).
MultichannelSpectrogram delay_and_sum(const MultichannelSpectrogram& spec,
                                      const SteeringVector& steering);

struct EnhanceParams {
  StftConfig stft;
  int separator = 100;   // filterbank split bin
  double alpha = 25.0;   // percentile width in percent
  DiagonalLoading loading;

  void validate() const;
};

// Optional capture of intermediate products for debugging and mask dumps.
struct PipelineTrace {
  SteeringVector steering;
  RatioMap ratio;
  MaskPair masks;
  BeamformerWeights weights;
  std::vector<int> ds_fallback_bins;
};

// Steering weights for the pipelines: TDoAs re-referenced so channel 0 has
// zero delay, keeping beamformed output time-aligned with channel 0.
SteeringVector reference_steering(const ArrayGeometry& geometry, const DoA& doa,
                                  int sample_rate, int frame_size);

// Full pipeline: STFT -> steering -> band power ratio -> percentile masks
// -> SCMs -> GEV + BAN -> overlap-add synthesis. Bins whose target mask is
// empty fall back to plain delay-and-sum weights; the trace records them.
AudioClip kissgev_enhance(const AudioClip& clip, const ArrayGeometry& geometry,
                          const DoA& doa, const EnhanceParams& params,
                          PipelineTrace* trace = nullptr);

// Delay-and-sum of a whole clip, aligned to channel 0 like kissgev_enhance.
AudioClip ds_enhance(const AudioClip& clip, const ArrayGeometry& geometry,
                     const DoA& doa, const StftConfig& config);

}  // namespace kissgev
