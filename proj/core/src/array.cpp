// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/array.hpp"

#include <cmath>
#include <complex>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kissgev/error.hpp"

namespace kissgev {

void ArrayGeometry::validate() const {
  if (num_mics() < 2) {
    throw InvalidArgument("array geometry needs at least 2 microphones, got " +
                          std::to_string(num_mics()));
  }
  for (const auto& p : mics) {
    if (!p.allFinite()) throw InvalidArgument("microphone position is not finite");
  }
  for (std::size_t i = 0; i < mics.size(); ++i) {
    for (std::size_t j = i + 1; j < mics.size(); ++j) {
      if ((mics[i] - mics[j]).norm() < 1e-9) {
        throw InvalidArgument("microphones " + std::to_string(i) + " and " +
                              std::to_string(j) + " share the same position");
      }
    }
  }
  if (!(speed_of_sound >= 300.0 && speed_of_sound <= 400.0)) {
    throw InvalidArgument("speed_of_sound must lie in [300, 400] m/s, got " +
                          std::to_string(speed_of_sound));
  }
}

ArrayGeometry parse_geometry(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("geometry JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("mics") || !j["mics"].is_array()) {
    throw FormatError("geometry JSON must hold a \"mics\" array");
  }
  ArrayGeometry g;
  for (const auto& m : j["mics"]) {
    if (!m.is_array() || m.size() != 3) {
      throw FormatError("each entry of \"mics\" must be an [x, y, z] triple");
    }
    for (const auto& v : m) {
      if (!v.is_number()) throw FormatError("microphone coordinates must be numbers");
    }
    g.mics.emplace_back(m[0].get<double>(), m[1].get<double>(), m[2].get<double>());
  }
  if (j.contains("speed_of_sound")) {
    if (!j["speed_of_sound"].is_number()) {
      throw FormatError("\"speed_of_sound\" must be a number");
    }
    g.speed_of_sound = j["speed_of_sound"].get<double>();
  }
  g.validate();
  return g;
}

ArrayGeometry load_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_geometry(buf.str());
}

std::string geometry_to_json(const ArrayGeometry& geometry) {
  nlohmann::ordered_json j;
  j["mics"] = nlohmann::json::array();
  for (const auto& m : geometry.mics) {
    j["mics"].push_back({m.x(), m.y(), m.z()});
  }
  j["speed_of_sound"] = geometry.speed_of_sound;
  return j.dump(2);
}

DoA::DoA(const Eigen::Vector3d& direction) {
  if (!direction.allFinite()) throw InvalidArgument("DoA vector is not finite");
  const double norm = direction.norm();
  if (norm < 1e-12) throw InvalidArgument("DoA vector must be nonzero");
  unit_ = direction / norm;
}

DoA DoA::from_azimuth_elevation(double azimuth_deg, double elevation_deg) {
  const double az = azimuth_deg * M_PI / 180.0;
  const double el = elevation_deg * M_PI / 180.0;
  return DoA(Eigen::Vector3d(std::cos(el) * std::cos(az),
                             std::cos(el) * std::sin(az), std::sin(el)));
}

Eigen::VectorXd compute_tdoa(const ArrayGeometry& geometry, const DoA& doa,
                             int sample_rate) {
  geometry.validate();
  if (sample_rate <= 0) throw InvalidArgument("sample rate must be positive");
  Eigen::VectorXd tau(geometry.num_mics());
  for (int d = 0; d < geometry.num_mics(); ++d) {
    tau(d) = -doa.unit().dot(geometry.mics[static_cast<std::size_t>(d)]) *
             sample_rate / geometry.speed_of_sound;
  }
  return tau;
}

SteeringVector make_steering(const Eigen::VectorXd& tdoas, int frame_size) {
  if (!tdoas.allFinite()) throw InvalidArgument("TDoAs must be finite");
  if (frame_size <= 0 || frame_size % 2 != 0) {
    throw InvalidArgument("frame_size must be a positive even integer");
  }
  const int bins = frame_size / 2 + 1;
  SteeringVector sv;
  sv.tdoas = tdoas;
  sv.weights.resize(tdoas.size(), bins);
  for (Eigen::Index d = 0; d < tdoas.size(); ++d) {
    const double phase_per_bin = 2.0 * M_PI * tdoas(d) / frame_size;
    for (int f = 0; f < bins; ++f) {
      sv.weights(d, f) = std::polar(1.0, phase_per_bin * f);
    }
  }
  return sv;
}

}  // namespace kissgev
