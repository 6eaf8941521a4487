// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace kissgev {

// Microphone positions in meters, array-centered coordinates.
struct ArrayGeometry {
  std::vector<Eigen::Vector3d> mics;
  double speed_of_sound = 343.0;  // m/s

  int num_mics() const { return static_cast<int>(mics.size()); }

  // Throws InvalidArgument unless there are at least two distinct
  // microphones and the speed of sound lies in [300, 400] m/s.
  void validate() const;
};

// Parses `{ "mics": [[x,y,z], ...], "speed_of_sound": 343.0 }`.
ArrayGeometry parse_geometry(const std::string& json_text);
ArrayGeometry load_geometry(const std::filesystem::path& path);
std::string geometry_to_json(const ArrayGeometry& geometry);

// Unit vector pointing from the array center toward the source.
class DoA {
 public:
  // Normalizes `direction`; throws InvalidArgument on zero or non-finite input.
  explicit DoA(const Eigen::Vector3d& direction);

  // Azimuth in the x-y plane (0 deg = +x, 90 deg = +y), elevation toward +z.
  static DoA from_azimuth_elevation(double azimuth_deg, double elevation_deg);

  const Eigen::Vector3d& unit() const { return unit_; }

 private:
  Eigen::Vector3d unit_;
};

// Far-field plane-wave TDoAs in samples: tau_d = -(u . p_d) * fs / c.
// A microphone farther along the DoA (closer to the source) receives the
// wavefront earlier and gets a more negative delay. Values are relative;
// adding a common offset to every tau is equivalent up to a global shift.
Eigen::VectorXd compute_tdoa(const ArrayGeometry& geometry, const DoA& doa,
                             int sample_rate);

// Anechoic steering weights W_d(f) = exp(j 2 pi f tau_d / N) over the
// one-sided bins f in {0, ..., N/2}. Applying W to channels whose delays
// follow compute_tdoa() phase-aligns the target across the array.
struct SteeringVector {
  Eigen::MatrixXcd weights;  // mics x bins
  Eigen::VectorXd tdoas;     // samples

  int num_mics() const { return static_cast<int>(weights.rows()); }
  int bins() const { return static_cast<int>(weights.cols()); }
};

SteeringVector make_steering(const Eigen::VectorXd& tdoas, int frame_size);

}  // namespace kissgev
