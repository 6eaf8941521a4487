// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kissgev/array.hpp"
#include "kissgev/audio.hpp"

namespace kissgev {

// Shoebox room with one source and the microphones of the receiving array,
// all positions in absolute room coordinates (meters).
struct RoomSpec {
  Eigen::Vector3d dimensions{6.0, 5.0, 3.0};
  double absorption = 0.5;  // uniform energy absorption across the six walls
  double speed_of_sound = 343.0;
  Eigen::Vector3d source_position{3.0, 2.5, 1.5};
  std::vector<Eigen::Vector3d> mic_positions;
  int max_order = 20;
  int sample_rate = 16000;
  int rir_length = 8192;  // samples

  void validate() const;
};

// One mirrored source. The reflection coefficient of every wall bounce is
// already multiplied in; order counts the bounces.
struct ImageSource {
  Eigen::Vector3d position;
  double reflection = 1.0;
  int order = 0;
};

// All image sources up to max_order whose distance to some microphone can
// land inside the RIR window. Positions do not depend on the microphone.
std::vector<ImageSource> enumerate_images(const RoomSpec& room);

// Image-method RIRs, one row per microphone. Every image contributes a
// Hann-windowed sinc (81 taps) at fractional delay r fs / c with amplitude
// reflection / (4 pi r).
Eigen::MatrixXd image_method_rir(const RoomSpec& room);

// A target/interference pair sharing one room and array pose. The room
// carries the target source; interference_position is the second source.
struct MixtureScenario {
  std::string id;
  std::string interference_type;
  std::uint64_t seed = 0;
  RoomSpec room;
  Eigen::Vector3d interference_position{1.0, 1.0, 1.5};
  Eigen::Vector3d array_center{0.0, 0.0, 0.0};
  std::vector<Eigen::Vector3d> mics_array;  // array-centered, room axes
  Eigen::Vector3d target_doa_unit{1.0, 0.0, 0.0};
  std::filesystem::path target_file;
  std::filesystem::path interference_file;

  RoomSpec interference_room() const;
  ArrayGeometry geometry() const;
  DoA target_doa() const { return DoA(target_doa_unit); }
};

struct SynthesizedMixture {
  AudioClip mixture;             // D channels
  AudioClip target_image;        // D channels, clean reverberant target
  AudioClip interference_image;  // D channels
};

// Convolves each source with its RIRs; the mixture is exactly the sample
// wise sum of the two returned images. Multichannel source clips use their
// first channel.
SynthesizedMixture synthesize_mixture(const MixtureScenario& scenario,
                                      const AudioClip& target,
                                      const AudioClip& interference);

// Sampling ranges for random scenarios; defaults follow the simulated
// experiment design (rooms 5-15 x 5-15 x 3-4 m, absorption 0.2-0.8,
// speed of sound 340-355 m/s).
struct ScenarioRanges {
  Eigen::Vector3d room_min{5.0, 5.0, 3.0};
  Eigen::Vector3d room_max{15.0, 15.0, 4.0};
  double absorption_min = 0.2;
  double absorption_max = 0.8;
  double speed_min = 340.0;
  double speed_max = 355.0;
  double source_distance_min = 0.9;
  double source_distance_max = 1.8;
  double min_separation_deg = 60.0;  // angular target/interference separation
  double wall_margin = 0.5;

  void validate() const;
};

struct ScenarioSamplerConfig {
  ScenarioRanges ranges;
  ArrayGeometry geometry;  // template pose, array-centered
  int sample_rate = 16000;
  int max_order = 20;
  int rir_length = 8192;
};

// Draws `count` scenarios with rooms, absorption, speed of sound, array
// pose and source positions sampled uniformly from the configured ranges.
// Deterministic in `seed` and independent of evaluation order.
std::vector<MixtureScenario> sample_scenarios(
    const std::vector<std::filesystem::path>& target_files,
    const std::vector<std::filesystem::path>& interference_files,
    const std::string& interference_type, const ScenarioSamplerConfig& config,
    int count, std::uint64_t seed);

}  // namespace kissgev
