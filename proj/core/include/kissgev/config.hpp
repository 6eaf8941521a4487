// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "kissgev/beamform.hpp"

namespace kissgev {

// Parameter set shared by every command line tool. Defaults: N = 512,
// hop = 256, gamma = 100, alpha = 25, loading 1e-6.
struct RunConfig {
  EnhanceParams params;
  std::filesystem::path geometry_path;
  std::uint64_t seed = 0;

  // Rejects any value that violates a module precondition, naming the field.
  void validate() const { params.validate(); }
};

// Applies the keys present in a JSON config file over `base`. Recognized
// layout:
//   { "stft": {"frame_size": 512, "hop": 256},
//     "maskgen": {"gamma": 100, "alpha": 25.0},
//     "beamform": {"loading": 1e-6},
//     "geometry": "path/to/geometry.json",
//     "seed": 0 }
RunConfig load_run_config(const std::filesystem::path& path, RunConfig base = {});
RunConfig parse_run_config(const std::string& json_text, RunConfig base = {});

}  // namespace kissgev
