// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/beamform.hpp"

#include <cmath>
#include <complex>
#include <string>

#include <Eigen/Eigenvalues>

#include "kissgev/error.hpp"

namespace kissgev {
namespace {

void check_spec_shapes(const MultichannelSpectrogram& spec) {
  if (spec.num_channels() < 1 || spec.frames() < 1) {
    throw InvalidArgument("spectrogram is empty");
  }
  for (const auto& ch : spec.channels) {
    if (ch.rows() != spec.frames() || ch.cols() != spec.bins()) {
      throw InvalidArgument("spectrogram channels disagree on shape");
    }
  }
}

// D x T matrix of channel snapshots at one frequency bin.
Eigen::MatrixXcd bin_snapshots(const MultichannelSpectrogram& spec, int f) {
  const int D = spec.num_channels();
  Eigen::MatrixXcd y(D, spec.frames());
  for (int d = 0; d < D; ++d) {
    y.row(d) = spec.channels[static_cast<std::size_t>(d)].col(f).transpose();
  }
  return y;
}

Eigen::MatrixXcd load_diagonal(const Eigen::MatrixXcd& phi,
                               const DiagonalLoading& loading) {
  const int D = static_cast<int>(phi.rows());
  const double load =
      loading.relative * (phi.real().trace() / D + loading.absolute_floor);
  return phi + load * Eigen::MatrixXcd::Identity(D, D);
}

}  // namespace

ScmStack apply_loading(const ScmStack& stack, const DiagonalLoading& loading) {
  ScmStack out;
  out.reserve(stack.size());
  for (const auto& phi : stack) out.push_back(load_diagonal(phi, loading));
  return out;
}

ScmStack estimate_scm(const MultichannelSpectrogram& spec, const TFMask& mask) {
  check_spec_shapes(spec);
  if (mask.values.rows() != spec.frames() ||
      mask.values.cols() != spec.bins()) {
    throw InvalidArgument("mask shape does not match the spectrogram");
  }
  if ((mask.values.array() < -1e-12).any() ||
      (mask.values.array() > 1.0 + 1e-12).any()) {
    throw InvalidArgument("mask values must lie in [0, 1]");
  }

  const int bins = spec.bins();
  ScmStack scms(static_cast<std::size_t>(bins));
  for (int f = 0; f < bins; ++f) {
    const Eigen::MatrixXcd y = bin_snapshots(spec, f);
    const Eigen::MatrixXcd weighted = y * mask.values.col(f).asDiagonal();
    Eigen::MatrixXcd phi = weighted * y.adjoint();
    phi = 0.5 * (phi + phi.adjoint().eval());  // Hermitian by construction
    scms[static_cast<std::size_t>(f)] = std::move(phi);
  }
  return scms;
}

BeamformerWeights solve_gev(const SCMSet& scms, const SteeringVector& steering,
                            const DiagonalLoading& loading) {
  const int bins = static_cast<int>(scms.phi_xx.size());
  if (bins < 1 || scms.phi_nn.size() != scms.phi_xx.size()) {
    throw InvalidArgument("SCM set is empty or the stacks disagree in length");
  }
  const int D = static_cast<int>(scms.phi_xx.front().rows());
  if (steering.bins() != bins || steering.num_mics() != D) {
    throw InvalidArgument("steering vector does not match the SCM set");
  }
  if (!(loading.relative >= 0.0) || !(loading.absolute_floor > 0.0)) {
    throw InvalidArgument("diagonal loading parameters must be non-negative "
                          "with a positive absolute floor");
  }

  BeamformerWeights weights;
  weights.f_gev.resize(bins, D);
  weights.g_ban = Eigen::VectorXd::Ones(bins);

  for (int f = 0; f < bins; ++f) {
    const Eigen::MatrixXcd& phi_xx = scms.phi_xx[static_cast<std::size_t>(f)];
    const Eigen::MatrixXcd& phi_nn = scms.phi_nn[static_cast<std::size_t>(f)];
    if (phi_xx.rows() != D || phi_xx.cols() != D || phi_nn.rows() != D ||
        phi_nn.cols() != D) {
      throw InvalidArgument("SCM at bin " + std::to_string(f) + " is not " +
                            std::to_string(D) + "x" + std::to_string(D));
    }
    if (!phi_xx.allFinite() || !phi_nn.allFinite()) {
      throw NumericError("non-finite SCM entries at bin " + std::to_string(f));
    }

    const Eigen::MatrixXcd loaded = load_diagonal(phi_nn, loading);

    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
        phi_xx, loaded, Eigen::ComputeEigenvectors | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) {
      throw SolverError("generalized eigensolver failed at bin " +
                        std::to_string(f));
    }

    Eigen::VectorXcd v = solver.eigenvectors().col(D - 1);  // largest eigenvalue
    const double norm = v.norm();
    if (!(norm > 0.0) || !v.allFinite()) {
      throw SolverError("degenerate eigenvector at bin " + std::to_string(f));
    }
    v /= norm;

    // Rotate so the inner product with the DS weight vector conj(W) is
    // real and non-negative; keeps the synthesis phase coherent in f.
    const std::complex<double> r = steering.weights.col(f).conjugate().dot(v);
    if (std::abs(r) > 1e-12) v *= std::conj(r) / std::abs(r);

    weights.f_gev.row(f) = v.transpose();
  }
  return weights;
}

Eigen::VectorXd ban_gain(const BeamformerWeights& weights, const ScmStack& phi_nn) {
  const int bins = static_cast<int>(weights.f_gev.rows());
  const int D = static_cast<int>(weights.f_gev.cols());
  if (static_cast<int>(phi_nn.size()) != bins) {
    throw InvalidArgument("Phi_NN stack does not match the weight bins");
  }

  Eigen::VectorXd g(bins);
  for (int f = 0; f < bins; ++f) {
    const Eigen::MatrixXcd& phi = phi_nn[static_cast<std::size_t>(f)];
    if (phi.rows() != D || phi.cols() != D) {
      throw InvalidArgument("Phi_NN at bin " + std::to_string(f) +
                            " has the wrong shape");
    }
    const Eigen::VectorXcd v = weights.f_gev.row(f).transpose();
    const Eigen::VectorXcd pv = phi * v;
    const double denom = D * D * std::real(v.dot(pv));
    if (denom > 0.0) {
      const double num = std::sqrt(std::max(std::real(pv.dot(pv)), 0.0));
      g(f) = num / denom;
    } else {
      g(f) = 0.0;
    }
  }
  return g;
}

MultichannelSpectrogram apply_beamformer(const MultichannelSpectrogram& spec,
                                         const BeamformerWeights& weights) {
  check_spec_shapes(spec);
  const int D = spec.num_channels();
  const int bins = spec.bins();
  if (weights.f_gev.rows() != bins || weights.f_gev.cols() != D ||
      weights.g_ban.size() != bins) {
    throw InvalidArgument("beamformer weights do not match the spectrogram");
  }

  Eigen::MatrixXcd z(spec.frames(), bins);
  for (int f = 0; f < bins; ++f) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(spec.frames());
    for (int d = 0; d < D; ++d) {
      acc += std::conj(weights.f_gev(f, d)) *
             spec.channels[static_cast<std::size_t>(d)].col(f);
    }
    z.col(f) = weights.g_ban(f) * acc;
  }

  MultichannelSpectrogram out;
  out.config = spec.config;
  out.sample_rate = spec.sample_rate;
  out.channels.push_back(std::move(z));
  return out;
}

MultichannelSpectrogram delay_and_sum(const MultichannelSpectrogram& spec,
                                      const SteeringVector& steering) {
  check_spec_shapes(spec);
  const int D = spec.num_channels();
  const int bins = spec.bins();
  if (steering.num_mics() != D || steering.bins() != bins) {
    throw InvalidArgument("steering vector does not match the spectrogram");
  }

  Eigen::MatrixXcd z(spec.frames(), bins);
  for (int f = 0; f < bins; ++f) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(spec.frames());
    for (int d = 0; d < D; ++d) {
      acc += steering.weights(d, f) *
             spec.channels[static_cast<std::size_t>(d)].col(f);
    }
    z.col(f) = acc / static_cast<double>(D);
  }

  MultichannelSpectrogram out;
  out.config = spec.config;
  out.sample_rate = spec.sample_rate;
  out.channels.push_back(std::move(z));
  return out;
}

void EnhanceParams::validate() const {
  stft.validate();
  const int nyquist = stft.frame_size / 2;
  if (separator < 1 || separator > nyquist) {
    throw InvalidArgument("maskgen.gamma must lie in [1, " +
                          std::to_string(nyquist) + "], got " +
                          std::to_string(separator));
  }
  if (!(alpha > 0.0 && alpha < 50.0)) {
    throw InvalidArgument("maskgen.alpha must lie in (0, 50), got " +
                          std::to_string(alpha));
  }
  if (!(loading.relative >= 0.0) || !std::isfinite(loading.relative)) {
    throw InvalidArgument("beamform.loading must be finite and non-negative");
  }
  if (!(loading.absolute_floor > 0.0)) {
    throw InvalidArgument("beamform loading floor must be positive");
  }
}

SteeringVector reference_steering(const ArrayGeometry& geometry, const DoA& doa,
                                  int sample_rate, int frame_size) {
  Eigen::VectorXd tau = compute_tdoa(geometry, doa, sample_rate);
  tau.array() -= tau(0);
  return make_steering(tau, frame_size);
}

AudioClip kissgev_enhance(const AudioClip& clip, const ArrayGeometry& geometry,
                          const DoA& doa, const EnhanceParams& params,
                          PipelineTrace* trace) {
  params.validate();
  clip.validate();
  geometry.validate();
  if (clip.channels() < 2) {
    throw InvalidArgument("KISS-GEV needs at least 2 channels, got " +
                          std::to_string(clip.channels()));
  }
  if (clip.channels() != geometry.num_mics()) {
    throw InvalidArgument("clip has " + std::to_string(clip.channels()) +
                          " channels but the geometry has " +
                          std::to_string(geometry.num_mics()) + " microphones");
  }

  const MultichannelSpectrogram spec = stft(clip, params.stft);
  const SteeringVector steering =
      reference_steering(geometry, doa, clip.sample_rate, params.stft.frame_size);
  const Filterbank fb = make_filterbank(params.stft.frame_size, params.separator);
  const RatioMap ratio = power_ratio(spec, steering, fb);
  const MaskThresholds th = mask_thresholds(ratio, params.alpha);
  const MaskPair masks = binary_masks(ratio, th);

  SCMSet scms;
  scms.phi_xx = estimate_scm(spec, masks.target);
  scms.phi_nn = estimate_scm(spec, masks.noise);

  BeamformerWeights weights = solve_gev(scms, steering, params.loading);
  // The loaded noise SCM keeps the gain bounded at bins where the noise
  // mask captured next to no energy.
  weights.g_ban = ban_gain(weights, apply_loading(scms.phi_nn, params.loading));

  // Bins where the target mask never fires carry no information for the
  // GEV, and bins whose masked noise data is exactly zero leave Eq. 8
  // without a usable inverse; both fall back to plain delay-and-sum.
  const int D = clip.channels();
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(D));
  std::vector<int> fallback;
  for (int f = 0; f < spec.bins(); ++f) {
    if (masks.target.values.col(f).sum() == 0.0 ||
        scms.phi_nn[static_cast<std::size_t>(f)].real().trace() == 0.0) {
      // F = conj(W)/sqrt(D) with g = 1/sqrt(D) reproduces (1/D) sum W_d Y_d.
      weights.f_gev.row(f) = steering.weights.col(f).adjoint() * inv_sqrt_d;
      weights.g_ban(f) = inv_sqrt_d;
      fallback.push_back(f);
    }
  }

  const MultichannelSpectrogram enhanced = apply_beamformer(spec, weights);
  AudioClip out = istft(enhanced);

  if (trace) {
    trace->steering = steering;
    trace->ratio = ratio;
    trace->masks = masks;
    trace->weights = weights;
    trace->ds_fallback_bins = std::move(fallback);
  }
  return out;
}

AudioClip ds_enhance(const AudioClip& clip, const ArrayGeometry& geometry,
                     const DoA& doa, const StftConfig& config) {
  clip.validate();
  geometry.validate();
  if (clip.channels() != geometry.num_mics()) {
    throw InvalidArgument("clip has " + std::to_string(clip.channels()) +
                          " channels but the geometry has " +
                          std::to_string(geometry.num_mics()) + " microphones");
  }
  const MultichannelSpectrogram spec = stft(clip, config);
  const SteeringVector steering =
      reference_steering(geometry, doa, clip.sample_rate, config.frame_size);
  return istft(delay_and_sum(spec, steering));
}

}  // namespace kissgev
