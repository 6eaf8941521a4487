// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <filesystem>

#include "kissgev/maskgen.hpp"

namespace kissgev {

// One row per frame, one column per bin; binary masks emit integer 0/1.
void write_mask_csv(const TFMask& mask, const std::filesystem::path& path);

// Plain PGM (P2), width = frames, height = bins with bin 0 on the bottom
// row. Pixel value 0 (black) where the mask is 1, 255 (white) where it is 0;
// soft masks interpolate linearly in between.
void write_mask_pgm(const TFMask& mask, const std::filesystem::path& path);

}  // namespace kissgev
