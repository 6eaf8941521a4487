// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kissgev/array.hpp"
#include "kissgev/audio.hpp"
#include "kissgev/stft.hpp"

namespace kissgev::testing {

// Unique directory under the system temp root, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

double rel_error(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

AudioClip random_clip(int channels, Eigen::Index samples, int sample_rate,
                      std::uint64_t seed, double amplitude = 0.3);

// Random Hermitian positive semidefinite matrix G G^H (+ ridge * I).
Eigen::MatrixXcd random_psd(int dim, std::uint64_t seed, double ridge = 0.0);

// Direct O(N^2) DFT of a real frame; bins 0..N/2. Reference for the FFT path.
Eigen::VectorXcd naive_dft(const Eigen::VectorXd& frame);

// Plane-wave spectrogram: Y_d(t,f) = S(t,f) exp(-j 2 pi f tau_d / N).
MultichannelSpectrogram plane_wave_spectrogram(const Eigen::MatrixXcd& source,
                                               const Eigen::VectorXd& tdoas,
                                               const StftConfig& config,
                                               int sample_rate);

// Zero-lag normalized cross correlation of two mono clips (common prefix).
double normalized_correlation(const AudioClip& a, const AudioClip& b);

struct PgmImage {
  int width = 0;
  int height = 0;
  int maxval = 0;
  std::vector<int> pixels;  // row major
  int at(int row, int col) const { return pixels[static_cast<std::size_t>(row * width + col)]; }
};

PgmImage read_pgm(const std::filesystem::path& path);

// Two-microphone geometry on the x axis, +/- half_spacing.
ArrayGeometry pair_geometry(double half_spacing = 0.05, double speed_of_sound = 343.0);

// Circular array in the x-y plane.
ArrayGeometry circular_geometry(int mics = 8, double radius = 0.0463,
                                double speed_of_sound = 343.0);

}  // namespace kissgev::testing
