// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <filesystem>

#include "kissgev/audio.hpp"

namespace kissgev {

enum class WavEncoding { Pcm16, Float32 };

// Reads a RIFF/WAVE file holding PCM-16, PCM-32 or IEEE float-32 samples,
// 1 to 64 channels. Integer PCM is normalized by 32768 (16 bit) or 2^31
// (32 bit). The sample rate is taken from the header; no resampling.
AudioClip read_wav(const std::filesystem::path& path);

// Writes `clip` in the requested encoding. Pcm16 clamps samples to [-1, 1]
// before quantization; Float32 round-trips float-valued samples exactly.
void write_wav(const AudioClip& clip, const std::filesystem::path& path,
               WavEncoding encoding = WavEncoding::Float32);

}  // namespace kissgev
