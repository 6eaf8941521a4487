// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <filesystem>
#include <vector>

#include "kissgev/roomsim.hpp"

namespace kissgev {

// One simulated scenario as recorded on disk. WAV paths are stored
// relative to the manifest file.
struct ManifestEntry {
  MixtureScenario scenario;
  std::filesystem::path mixture_wav;
  std::filesystem::path target_image_wav;
  std::filesystem::path interference_image_wav;
  double target_image_rms = 0.0;
  double interference_image_rms = 0.0;
};

struct Manifest {
  int sample_rate = 16000;
  std::uint64_t seed = 0;
  std::vector<ManifestEntry> entries;
};

// Byte-stable for identical content, so reruns with the same seed produce
// an identical file.
void write_manifest(const Manifest& manifest, const std::filesystem::path& path);
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace kissgev
