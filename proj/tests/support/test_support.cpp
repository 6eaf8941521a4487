// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "test_support.hpp"

#include <unistd.h>

#include <atomic>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "kissgev/error.hpp"

namespace kissgev::testing {

TempDir::TempDir() {
  static std::atomic<unsigned> counter{0};
  const auto base = std::filesystem::temp_directory_path();
  path_ = base / ("kissgev-test-" + std::to_string(::getpid()) + "-" +
                  std::to_string(counter.fetch_add(1)));
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

double rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).norm() / std::max(b.norm(), 1e-300);
}

AudioClip random_clip(int channels, Eigen::Index samples, int sample_rate,
                      std::uint64_t seed, double amplitude) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-amplitude, amplitude);
  AudioClip clip;
  clip.sample_rate = sample_rate;
  clip.samples.resize(channels, samples);
  for (int d = 0; d < channels; ++d) {
    for (Eigen::Index t = 0; t < samples; ++t) clip.samples(d, t) = uni(rng);
  }
  return clip;
}

Eigen::MatrixXcd random_psd(int dim, std::uint64_t seed, double ridge) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
    }
  }
  Eigen::MatrixXcd psd = g * g.adjoint();
  psd += ridge * Eigen::MatrixXcd::Identity(dim, dim);
  return 0.5 * (psd + psd.adjoint().eval());
}

Eigen::VectorXcd naive_dft(const Eigen::VectorXd& frame) {
  const int n = static_cast<int>(frame.size());
  Eigen::VectorXcd bins(n / 2 + 1);
  for (int f = 0; f <= n / 2; ++f) {
    std::complex<double> acc(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
      acc += frame(i) * std::polar(1.0, -2.0 * M_PI * f * i / n);
    }
    bins(f) = acc;
  }
  return bins;
}

MultichannelSpectrogram plane_wave_spectrogram(const Eigen::MatrixXcd& source,
                                               const Eigen::VectorXd& tdoas,
                                               const StftConfig& config,
                                               int sample_rate) {
  MultichannelSpectrogram spec;
  spec.config = config;
  spec.sample_rate = sample_rate;
  const int bins = config.bins();
  for (Eigen::Index d = 0; d < tdoas.size(); ++d) {
    Eigen::MatrixXcd ch(source.rows(), bins);
    for (int f = 0; f < bins; ++f) {
      const std::complex<double> shift =
          std::polar(1.0, -2.0 * M_PI * f * tdoas(d) / config.frame_size);
      ch.col(f) = source.col(f) * shift;
    }
    spec.channels.push_back(std::move(ch));
  }
  return spec;
}

double normalized_correlation(const AudioClip& a, const AudioClip& b) {
  const Eigen::Index n = std::min(a.length(), b.length());
  const Eigen::VectorXd x = a.samples.row(0).head(n).transpose();
  const Eigen::VectorXd y = b.samples.row(0).head(n).transpose();
  const double denom = x.norm() * y.norm();
  if (denom <= 0.0) return 0.0;
  return x.dot(y) / denom;
}

PgmImage read_pgm(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open PGM: " + path.string());
  std::string magic;
  in >> magic;
  if (magic != "P2") throw FormatError("expected P2 PGM, got " + magic);
  PgmImage img;
  in >> img.width >> img.height >> img.maxval;
  img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
  for (auto& p : img.pixels) in >> p;
  if (!in) throw FormatError("truncated PGM: " + path.string());
  return img;
}

ArrayGeometry pair_geometry(double half_spacing, double speed_of_sound) {
  ArrayGeometry g;
  g.mics = {Eigen::Vector3d(half_spacing, 0, 0), Eigen::Vector3d(-half_spacing, 0, 0)};
  g.speed_of_sound = speed_of_sound;
  return g;
}

ArrayGeometry circular_geometry(int mics, double radius, double speed_of_sound) {
  ArrayGeometry g;
  for (int k = 0; k < mics; ++k) {
    const double a = 2.0 * M_PI * k / mics;
    g.mics.emplace_back(radius * std::cos(a), radius * std::sin(a), 0.0);
  }
  g.speed_of_sound = speed_of_sound;
  return g;
}

}  // namespace kissgev::testing
