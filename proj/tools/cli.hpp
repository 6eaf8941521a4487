// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kissgev/config.hpp"
#include "kissgev/metrics.hpp"
#include "kissgev/roomsim.hpp"
#include "kissgev/wav_io.hpp"

namespace kissgev::cli {

// Direction given either as azimuth/elevation degrees or as a raw vector
// string "x,y,z". Throws InvalidArgument when neither is usable.
struct DoaSpec {
  std::optional<double> azimuth_deg;
  std::optional<double> elevation_deg;
  std::optional<std::string> vector;

  DoA resolve() const;
};

struct SimulateOptions {
  std::filesystem::path targets_dir;
  // interference type label -> corpus directory
  std::vector<std::pair<std::string, std::filesystem::path>> interference;
  std::filesystem::path out_dir;
  std::filesystem::path geometry_path;
  int count = 20;  // scenarios per interference type
  std::uint64_t seed = 0;
  ScenarioRanges ranges;
  int sample_rate = 16000;
  int max_order = 20;
  int rir_length = 8192;
  bool unchecked = false;  // skip the experiment-range validation
  int jobs = 1;
};

struct EnhanceOptions {
  std::filesystem::path input;
  std::filesystem::path output;
  std::filesystem::path geometry_path;
  DoaSpec doa;
  std::string method = "kissgev";  // ds | kissgev | oracle
  std::filesystem::path target_ref;        // oracle only
  std::filesystem::path interference_ref;  // oracle only
  RunConfig config;
  WavEncoding encoding = WavEncoding::Float32;
};

struct MaskDumpOptions {
  std::filesystem::path input;
  std::filesystem::path geometry_path;
  DoaSpec doa;
  std::filesystem::path out_prefix;
  RunConfig config;
};

struct EvaluateCliOptions {
  std::filesystem::path manifest_path;
  std::vector<std::string> methods{"unprocessed", "ds", "kissgev", "oracle_gev"};
  std::filesystem::path out_csv;
  std::string metric = "si-sdr";  // si-sdr | fir-sdr
  int fir_taps = 512;
  int jobs = 1;
  RunConfig config;
};

// Each command returns a process exit code: 0 on success, 1 when some
// scenarios failed but partial results were written. Validation problems
// throw InvalidArgument/FormatError, runtime problems IoError etc.
int cmd_simulate(const SimulateOptions& options);
int cmd_enhance(const EnhanceOptions& options);
int cmd_mask_dump(const MaskDumpOptions& options);
int cmd_evaluate(const EvaluateCliOptions& options);

// Sorted list of .wav files directly inside `dir`.
std::vector<std::filesystem::path> list_wavs(const std::filesystem::path& dir);

}  // namespace kissgev::cli
