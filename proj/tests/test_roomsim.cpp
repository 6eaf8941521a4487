// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "kissgev/error.hpp"
#include "kissgev/roomsim.hpp"
#include "kissgev/synth.hpp"
#include "support/test_support.hpp"

using namespace kissgev;
namespace kt = kissgev::testing;

namespace {

RoomSpec basic_room() {
  RoomSpec room;
  room.dimensions = {6.0, 5.0, 3.0};
  room.absorption = 0.5;
  room.speed_of_sound = 343.0;
  room.sample_rate = 16000;
  room.rir_length = 4096;
  room.source_position = {2.0, 2.5, 1.5};
  room.mic_positions = {{4.0, 2.5, 1.5}};
  return room;
}

// Independent image enumeration, written as the plain sextuple loop.
std::vector<ImageSource> brute_force_images(const RoomSpec& room, int span) {
  const double beta = std::sqrt(1.0 - room.absorption);
  std::vector<ImageSource> images;
  for (int mx = -span; mx <= span; ++mx) {
    for (int my = -span; my <= span; ++my) {
      for (int mz = -span; mz <= span; ++mz) {
        for (int q = 0; q <= 1; ++q) {
          for (int j = 0; j <= 1; ++j) {
            for (int k = 0; k <= 1; ++k) {
              const int order = std::abs(2 * mx - q) + std::abs(2 * my - j) +
                                std::abs(2 * mz - k);
              if (order > room.max_order) continue;
              ImageSource img;
              img.position = {
                  (1 - 2 * q) * room.source_position.x() + 2.0 * mx * room.dimensions.x(),
                  (1 - 2 * j) * room.source_position.y() + 2.0 * my * room.dimensions.y(),
                  (1 - 2 * k) * room.source_position.z() + 2.0 * mz * room.dimensions.z()};
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

std::vector<std::array<double, 5>> canonical(const std::vector<ImageSource>& v) {
  std::vector<std::array<double, 5>> out;
  for (const auto& img : v) {
    out.push_back({img.position.x(), img.position.y(), img.position.z(),
                   img.reflection, static_cast<double>(img.order)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("full absorption leaves a single impulse at the geometric delay") {
  RoomSpec room = basic_room();
  room.absorption = 1.0;
  room.dimensions = {20.0, 8.0, 4.0};
  room.mic_positions = {{2.0, 4.0, 2.0}};
  // distance chosen as an exact whole number of samples: 100 * c / fs
  const double r = 100.0 * room.speed_of_sound / room.sample_rate;
  room.source_position = room.mic_positions[0] + Eigen::Vector3d(r, 0, 0);

  const Eigen::MatrixXd rir = image_method_rir(room);
  Eigen::Index peak;
  rir.row(0).cwiseAbs().maxCoeff(&peak);
  CHECK(peak == 100);
  CHECK(rir(0, peak) == doctest::Approx(1.0 / (4.0 * M_PI * r)).epsilon(0.02));

  // everything except the peak is numerically silent
  Eigen::VectorXd rest = rir.row(0).transpose();
  rest(peak) = 0.0;
  CHECK(rest.cwiseAbs().maxCoeff() <= 1e-12 * std::abs(rir(0, peak)));
}

TEST_CASE("doubling the distance halves the direct-path amplitude") {
  RoomSpec room = basic_room();
  room.absorption = 1.0;
  room.dimensions = {20.0, 8.0, 4.0};
  room.source_position = {2.0, 4.0, 2.0};
  const double r1 = 100.0 * room.speed_of_sound / room.sample_rate;
  room.mic_positions = {room.source_position + Eigen::Vector3d(r1, 0, 0),
                        room.source_position + Eigen::Vector3d(2 * r1, 0, 0)};
  const Eigen::MatrixXd rir = image_method_rir(room);
  const double peak1 = rir.row(0).cwiseAbs().maxCoeff();
  const double peak2 = rir.row(1).cwiseAbs().maxCoeff();
  CHECK(peak2 / peak1 == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("fractional delays keep the peak within one sample of geometry") {
  RoomSpec room = basic_room();
  room.absorption = 1.0;
  room.source_position = {2.0, 2.2, 1.4};
  room.mic_positions = {{4.3, 3.1, 1.7}};
  const double r = (room.source_position - room.mic_positions[0]).norm();
  const double expected = r * room.sample_rate / room.speed_of_sound;
  const Eigen::MatrixXd rir = image_method_rir(room);
  Eigen::Index peak;
  rir.row(0).cwiseAbs().maxCoeff(&peak);
  CHECK(std::abs(static_cast<double>(peak) - expected) <= 1.0);
}

TEST_CASE("image enumeration matches a brute-force oracle") {
  RoomSpec room = basic_room();
  room.max_order = 4;
  room.rir_length = 16000;  // large enough that the order cap binds
  const auto ours = canonical(enumerate_images(room));
  const auto brute = canonical(brute_force_images(room, 3));
  REQUIRE(ours.size() == brute.size());
  for (std::size_t i = 0; i < ours.size(); ++i) {
    for (int k = 0; k < 5; ++k) {
      CHECK(ours[i][static_cast<std::size_t>(k)] ==
            doctest::Approx(brute[i][static_cast<std::size_t>(k)]).epsilon(1e-12));
    }
  }
}

TEST_CASE("per-order image energy decays for uniform absorption") {
  RoomSpec room = basic_room();
  room.max_order = 6;
  room.rir_length = 1 << 17;
  const auto images = enumerate_images(room);
  std::map<int, double> energy;
  for (const auto& img : images) {
    const double r = (img.position - room.mic_positions[0]).norm();
    const double amp = img.reflection / (4.0 * M_PI * r);
    energy[img.order] += amp * amp;
  }
  for (int k = 1; k <= 5; ++k) {
    CHECK(energy[k] < energy[k - 1]);
  }
}

TEST_CASE("reverberant RIR energy decays from head to tail") {
  RoomSpec room = basic_room();
  room.absorption = 0.2;
  const Eigen::MatrixXd rir = image_method_rir(room);
  const int n = room.rir_length / 10;
  const double head = rir.row(0).head(n).squaredNorm();
  const double tail = rir.row(0).tail(n).squaredNorm();
  CHECK(tail < head);
  CHECK(head > 0.0);
}

TEST_CASE("a source on top of a microphone is a geometry error") {
  RoomSpec room = basic_room();
  room.source_position = room.mic_positions[0] + Eigen::Vector3d(1e-4, 0, 0);
  CHECK_THROWS_WITH_AS(image_method_rir(room), doctest::Contains("1 mm"),
                       InvalidArgument);
}

TEST_CASE("room validation rejects out-of-room positions and bad absorption") {
  RoomSpec room = basic_room();
  room.source_position = {7.0, 2.5, 1.5};
  CHECK_THROWS_AS(room.validate(), InvalidArgument);
  room = basic_room();
  room.absorption = 0.0;
  CHECK_THROWS_AS(room.validate(), InvalidArgument);
  room = basic_room();
  room.absorption = 1.5;
  CHECK_THROWS_AS(room.validate(), InvalidArgument);
  room = basic_room();
  room.mic_positions.clear();
  CHECK_THROWS_AS(room.validate(), InvalidArgument);
}

namespace {

MixtureScenario two_source_scenario() {
  MixtureScenario s;
  s.room = basic_room();
  s.room.mic_positions = {{4.0, 2.5, 1.5}, {4.1, 2.5, 1.5}};
  s.mics_array = {{-0.05, 0, 0}, {0.05, 0, 0}};
  s.array_center = {4.05, 2.5, 1.5};
  s.interference_position = {4.05, 1.0, 1.5};
  s.target_doa_unit = (s.room.source_position - s.array_center).normalized();
  return s;
}

}  // namespace

TEST_CASE("the mixture is exactly the sum of the two images") {
  const auto s = two_source_scenario();
  const AudioClip target = synth::speech_like(1.0, 16000, 70);
  const AudioClip itf = synth::ambient_noise(1.3, 16000, 71);
  const auto mix = synthesize_mixture(s, target, itf);
  CHECK(mix.mixture.channels() == 2);
  CHECK(mix.mixture.length() ==
        itf.length() + s.room.rir_length - 1);  // longer source wins
  CHECK((mix.mixture.samples - mix.target_image.samples -
         mix.interference_image.samples)
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("a silent interference clip leaves the mixture equal to the target") {
  const auto s = two_source_scenario();
  const AudioClip target = synth::speech_like(1.0, 16000, 72);
  AudioClip silent;
  silent.sample_rate = 16000;
  silent.samples.setZero(1, target.length());
  const auto mix = synthesize_mixture(s, target, silent);
  CHECK((mix.mixture.samples - mix.target_image.samples).cwiseAbs().maxCoeff() ==
        0.0);
}

TEST_CASE("synthesis is linear in the source") {
  const auto s = two_source_scenario();
  AudioClip target = synth::speech_like(1.0, 16000, 73);
  const AudioClip itf = synth::ambient_noise(1.0, 16000, 74);
  const auto base = synthesize_mixture(s, target, itf);
  target.samples *= 2.0;  // power of two keeps the scaling exact
  const auto scaled = synthesize_mixture(s, target, itf);
  CHECK((scaled.target_image.samples - 2.0 * base.target_image.samples)
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("sample-rate mismatches are rejected") {
  const auto s = two_source_scenario();
  AudioClip target = synth::speech_like(1.0, 8000, 75);
  const AudioClip itf = synth::ambient_noise(1.0, 16000, 76);
  CHECK_THROWS_AS(synthesize_mixture(s, target, itf), InvalidArgument);
}

TEST_CASE("scenario sampling respects the configured ranges") {
  ScenarioSamplerConfig config;
  config.geometry = kt::circular_geometry();
  const std::vector<std::filesystem::path> targets = {"t0.wav", "t1.wav"};
  const std::vector<std::filesystem::path> noises = {"n0.wav"};
  const auto scenarios =
      sample_scenarios(targets, noises, "ambient", config, 50, 1234);
  REQUIRE(scenarios.size() == 50);
  for (const auto& s : scenarios) {
    CHECK(s.interference_type == "ambient");
    for (int a = 0; a < 3; ++a) {
      CHECK(s.room.dimensions(a) >= config.ranges.room_min(a));
      CHECK(s.room.dimensions(a) <= config.ranges.room_max(a));
    }
    CHECK(s.room.absorption >= 0.2);
    CHECK(s.room.absorption <= 0.8);
    CHECK(s.room.speed_of_sound >= 340.0);
    CHECK(s.room.speed_of_sound <= 355.0);
    CHECK(std::abs(s.target_doa_unit.norm() - 1.0) <= 1e-9);
    const double dist = (s.room.source_position - s.array_center).norm();
    CHECK(dist >= config.ranges.source_distance_min - 1e-9);
    CHECK(dist <= config.ranges.source_distance_max + 1e-9);
    // angular separation between the two sources
    const Eigen::Vector3d u =
        (s.room.source_position - s.array_center).normalized();
    const Eigen::Vector3d v =
        (s.interference_position - s.array_center).normalized();
    CHECK(u.dot(v) <=
          std::cos(config.ranges.min_separation_deg * M_PI / 180.0) + 1e-9);
    CHECK_NOTHROW(s.room.validate());
  }
}

TEST_CASE("scenario sampling is deterministic and count-0 yields nothing") {
  ScenarioSamplerConfig config;
  config.geometry = kt::circular_geometry();
  const std::vector<std::filesystem::path> targets = {"a.wav", "b.wav", "c.wav"};
  const std::vector<std::filesystem::path> noises = {"x.wav", "y.wav"};
  const auto a = sample_scenarios(targets, noises, "music", config, 10, 42);
  const auto b = sample_scenarios(targets, noises, "music", config, 10, 42);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(a[i].seed == b[i].seed);
    CHECK((a[i].room.dimensions - b[i].room.dimensions).norm() == 0.0);
    CHECK((a[i].room.source_position - b[i].room.source_position).norm() == 0.0);
    CHECK(a[i].target_file == b[i].target_file);
  }
  CHECK(sample_scenarios(targets, noises, "music", config, 0, 42).empty());
  CHECK_THROWS_AS(sample_scenarios({}, noises, "music", config, 1, 42),
                  InvalidArgument);
}
