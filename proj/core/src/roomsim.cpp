// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/roomsim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "convolve.hpp"
#include "kissgev/error.hpp"

namespace kissgev {
namespace {

constexpr int kSincHalfWidth = 40;  // 81-tap windowed sinc
constexpr double kMinSourceDistance = 1e-3;

double sinc_pi(double x) {
  if (x == 0.0) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

double hann_taper(double x) {
  return 0.5 * (1.0 + std::cos(2.0 * M_PI * x / (2 * kSincHalfWidth + 1)));
}

void check_inside(const Eigen::Vector3d& p, const Eigen::Vector3d& dims,
                  const char* what) {
  for (int i = 0; i < 3; ++i) {
    if (!(p(i) > 0.0 && p(i) < dims(i))) {
      throw InvalidArgument(std::string(what) + " lies outside the room");
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void RoomSpec::validate() const {
  if (!(dimensions.array() > 0.0).all()) {
    throw InvalidArgument("room dimensions must be positive");
  }
  if (!(absorption > 0.0 && absorption <= 1.0)) {
    throw InvalidArgument("absorption must lie in (0, 1], got " +
                          std::to_string(absorption));
  }
  if (!(speed_of_sound >= 300.0 && speed_of_sound <= 400.0)) {
    throw InvalidArgument("speed_of_sound must lie in [300, 400] m/s");
  }
  if (mic_positions.empty()) throw InvalidArgument("room has no microphones");
  check_inside(source_position, dimensions, "source");
  for (const auto& m : mic_positions) check_inside(m, dimensions, "microphone");
  if (max_order < 0) throw InvalidArgument("max_order must be non-negative");
  if (sample_rate <= 0) throw InvalidArgument("sample_rate must be positive");
  if (rir_length <= 0) throw InvalidArgument("rir_length must be positive");
}

std::vector<ImageSource> enumerate_images(const RoomSpec& room) {
  room.validate();
  const double beta = std::sqrt(1.0 - room.absorption);
  const double meters_per_sample = room.speed_of_sound / room.sample_rate;
  const double max_distance =
      (room.rir_length + kSincHalfWidth + 1) * meters_per_sample;

  // Mirrors farther out than max_distance from every mic cannot land a tap
  // inside the RIR window; bound the lattice generously by the room span.
  Eigen::Vector3i span;
  for (int i = 0; i < 3; ++i) {
    const int by_distance =
        static_cast<int>(std::ceil(max_distance / (2.0 * room.dimensions(i)))) + 1;
    const int by_order = room.max_order / 2 + 1;
    span(i) = std::min(by_distance, by_order);
  }

  std::vector<ImageSource> images;
  for (int mx = -span(0); mx <= span(0); ++mx) {
    for (int my = -span(1); my <= span(1); ++my) {
      for (int mz = -span(2); mz <= span(2); ++mz) {
        for (int q = 0; q <= 1; ++q) {
          for (int j = 0; j <= 1; ++j) {
            for (int k = 0; k <= 1; ++k) {
              const int order = std::abs(2 * mx - q) + std::abs(2 * my - j) +
                                std::abs(2 * mz - k);
              if (order > room.max_order) continue;
              ImageSource img;
              img.position =
                  Eigen::Vector3d((1 - 2 * q) * room.source_position.x() +
                                      2.0 * mx * room.dimensions.x(),
                                  (1 - 2 * j) * room.source_position.y() +
                                      2.0 * my * room.dimensions.y(),
                                  (1 - 2 * k) * room.source_position.z() +
                                      2.0 * mz * room.dimensions.z());
              img.order = order;
              img.reflection = std::pow(beta, order);
              images.push_back(img);
            }
          }
        }
      }
    }
  }
  return images;
}

Eigen::MatrixXd image_method_rir(const RoomSpec& room) {
  const std::vector<ImageSource> images = enumerate_images(room);
  const int D = static_cast<int>(room.mic_positions.size());
  const double samples_per_meter = room.sample_rate / room.speed_of_sound;

  Eigen::MatrixXd rir = Eigen::MatrixXd::Zero(D, room.rir_length);
  for (int d = 0; d < D; ++d) {
    const Eigen::Vector3d& mic = room.mic_positions[static_cast<std::size_t>(d)];
    if ((room.source_position - mic).norm() < kMinSourceDistance) {
      throw InvalidArgument("source coincides with microphone " +
                            std::to_string(d) + " (closer than 1 mm)");
    }
    for (const ImageSource& img : images) {
      const double r = (img.position - mic).norm();
      if (r < kMinSourceDistance) continue;
      const double delay = r * samples_per_meter;
      const double amplitude = img.reflection / (4.0 * M_PI * r);
      const int first = std::max(0, static_cast<int>(std::ceil(delay)) - kSincHalfWidth);
      const int last = std::min(room.rir_length - 1,
                                static_cast<int>(std::floor(delay)) + kSincHalfWidth);
      for (int n = first; n <= last; ++n) {
        const double x = n - delay;
        rir(d, n) += amplitude * hann_taper(x) * sinc_pi(x);
      }
    }
  }
  return rir;
}

RoomSpec MixtureScenario::interference_room() const {
  RoomSpec r = room;
  r.source_position = interference_position;
  return r;
}

ArrayGeometry MixtureScenario::geometry() const {
  ArrayGeometry g;
  g.mics = mics_array;
  g.speed_of_sound = room.speed_of_sound;
  return g;
}

SynthesizedMixture synthesize_mixture(const MixtureScenario& scenario,
                                      const AudioClip& target,
                                      const AudioClip& interference) {
  target.validate();
  interference.validate();
  if (target.sample_rate != scenario.room.sample_rate ||
      interference.sample_rate != scenario.room.sample_rate) {
    throw InvalidArgument("source clip sample rates must match the scenario (" +
                          std::to_string(scenario.room.sample_rate) + " Hz)");
  }

  const Eigen::MatrixXd target_rir = image_method_rir(scenario.room);
  const Eigen::MatrixXd itf_rir = image_method_rir(scenario.interference_room());
  const int D = static_cast<int>(target_rir.rows());

  const Eigen::VectorXd x_t = target.samples.row(0).transpose();
  const Eigen::VectorXd x_i = interference.samples.row(0).transpose();
  const Eigen::Index len_t = x_t.size() + scenario.room.rir_length - 1;
  const Eigen::Index len_i = x_i.size() + scenario.room.rir_length - 1;
  const Eigen::Index common = std::max(len_t, len_i);

  SynthesizedMixture out;
  out.target_image.sample_rate = scenario.room.sample_rate;
  out.interference_image.sample_rate = scenario.room.sample_rate;
  out.mixture.sample_rate = scenario.room.sample_rate;
  out.target_image.samples.setZero(D, common);
  out.interference_image.samples.setZero(D, common);

  for (int d = 0; d < D; ++d) {
    out.target_image.samples.row(d).head(len_t) =
        detail::fft_convolve(x_t, target_rir.row(d).transpose()).transpose();
    out.interference_image.samples.row(d).head(len_i) =
        detail::fft_convolve(x_i, itf_rir.row(d).transpose()).transpose();
  }
  out.mixture.samples = out.target_image.samples + out.interference_image.samples;
  return out;
}

void ScenarioRanges::validate() const {
  if (!(room_min.array() > 0.0).all() || !((room_max - room_min).array() >= 0.0).all()) {
    throw InvalidArgument("room dimension ranges are inverted or non-positive");
  }
  if (!(absorption_min > 0.0 && absorption_max <= 1.0 &&
        absorption_min <= absorption_max)) {
    throw InvalidArgument("absorption range must satisfy 0 < min <= max <= 1");
  }
  if (!(speed_min >= 300.0 && speed_max <= 400.0 && speed_min <= speed_max)) {
    throw InvalidArgument("speed of sound range must lie within [300, 400] m/s");
  }
  if (!(source_distance_min > 0.0 && source_distance_min <= source_distance_max)) {
    throw InvalidArgument("source distance range is invalid");
  }
  if (!(min_separation_deg >= 0.0 && min_separation_deg < 180.0)) {
    throw InvalidArgument("min_separation_deg must lie in [0, 180)");
  }
  if (!(wall_margin >= 0.0)) throw InvalidArgument("wall_margin must be non-negative");
}

std::vector<MixtureScenario> sample_scenarios(
    const std::vector<std::filesystem::path>& target_files,
    const std::vector<std::filesystem::path>& interference_files,
    const std::string& interference_type, const ScenarioSamplerConfig& config,
    int count, std::uint64_t seed) {
  config.ranges.validate();
  config.geometry.validate();
  if (count < 0) throw InvalidArgument("scenario count must be non-negative");
  if (count > 0 && (target_files.empty() || interference_files.empty())) {
    throw InvalidArgument("corpus must hold at least one target and one "
                          "interference clip");
  }

  double array_radius = 0.0;
  for (const auto& m : config.geometry.mics) {
    array_radius = std::max(array_radius, m.norm());
  }

  std::vector<MixtureScenario> scenarios;
  scenarios.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(splitmix64(seed ^ (0x9E3779B97F4A7C15ull * (i + 1))));
    auto uniform = [&rng](double lo, double hi) {
      return std::uniform_real_distribution<double>(lo, hi)(rng);
    };

    MixtureScenario s;
    s.interference_type = interference_type;
    s.seed = splitmix64(seed + static_cast<std::uint64_t>(i));
    {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "-%03d", i);
      s.id = interference_type + buf;
    }

    RoomSpec& room = s.room;
    const ScenarioRanges& rg = config.ranges;
    for (int a = 0; a < 3; ++a) {
      room.dimensions(a) = uniform(rg.room_min(a), rg.room_max(a));
    }
    room.absorption = uniform(rg.absorption_min, rg.absorption_max);
    room.speed_of_sound = uniform(rg.speed_min, rg.speed_max);
    room.sample_rate = config.sample_rate;
    room.max_order = config.max_order;
    room.rir_length = config.rir_length;

    const double margin = rg.wall_margin + array_radius;
    for (int a = 0; a < 3; ++a) {
      const double lo = std::min(margin, room.dimensions(a) / 2);
      s.array_center(a) = uniform(lo, room.dimensions(a) - lo);
    }

    const double yaw = uniform(0.0, 2.0 * M_PI);
    const Eigen::AngleAxisd rot(yaw, Eigen::Vector3d::UnitZ());
    s.mics_array.clear();
    room.mic_positions.clear();
    for (const auto& m : config.geometry.mics) {
      const Eigen::Vector3d rotated = rot * m;
      s.mics_array.push_back(rotated);
      room.mic_positions.push_back(s.array_center + rotated);
    }

    auto place_source = [&](const Eigen::Vector3d* keep_away_from)
        -> Eigen::Vector3d {
      const double min_cos = std::cos(rg.min_separation_deg * M_PI / 180.0);
      for (int attempt = 0; attempt < 2000; ++attempt) {
        const double az = uniform(0.0, 2.0 * M_PI);
        const double el = uniform(-M_PI / 9.0, M_PI / 9.0);  // +/- 20 degrees
        const double dist = uniform(rg.source_distance_min, rg.source_distance_max);
        const Eigen::Vector3d u(std::cos(el) * std::cos(az),
                                std::cos(el) * std::sin(az), std::sin(el));
        const Eigen::Vector3d pos = s.array_center + dist * u;
        bool inside = true;
        for (int a = 0; a < 3; ++a) {
          if (!(pos(a) > rg.wall_margin &&
                pos(a) < room.dimensions(a) - rg.wall_margin)) {
            inside = false;
            break;
          }
        }
        if (!inside) continue;
        if (keep_away_from) {
          const Eigen::Vector3d other =
              (*keep_away_from - s.array_center).normalized();
          if (u.dot(other) > min_cos) continue;
        }
        return pos;
      }
      throw InvalidArgument("could not place a source inside the sampled room; "
                            "check the distance and separation ranges");
    };

    room.source_position = place_source(nullptr);
    s.interference_position = place_source(&room.source_position);
    s.target_doa_unit = (room.source_position - s.array_center).normalized();

    s.target_file = target_files[static_cast<std::size_t>(std::uniform_int_distribution<int>(
        0, static_cast<int>(target_files.size()) - 1)(rng))];
    s.interference_file =
        interference_files[static_cast<std::size_t>(std::uniform_int_distribution<int>(
            0, static_cast<int>(interference_files.size()) - 1)(rng))];

    room.validate();
    scenarios.push_back(std::move(s));
  }
  return scenarios;
}

}  // namespace kissgev
