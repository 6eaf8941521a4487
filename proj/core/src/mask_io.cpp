// Copyright 2026 kissgev contributors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "kissgev/mask_io.hpp"

#include <cmath>
#include <fstream>

#include "kissgev/error.hpp"

namespace kissgev {

void write_mask_csv(const TFMask& mask, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  const Eigen::Index frames = mask.values.rows();
  const Eigen::Index bins = mask.values.cols();
  for (Eigen::Index t = 0; t < frames; ++t) {
    for (Eigen::Index f = 0; f < bins; ++f) {
      if (f) out << ',';
      if (mask.kind == MaskKind::Binary) {
        out << (mask.values(t, f) != 0.0 ? 1 : 0);
      } else {
        out << mask.values(t, f);
      }
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing mask CSV: " + path.string());
}

void write_mask_pgm(const TFMask& mask, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  const Eigen::Index frames = mask.values.rows();
  const Eigen::Index bins = mask.values.cols();
  out << "P2\n" << frames << ' ' << bins << "\n255\n";
  for (Eigen::Index row = 0; row < bins; ++row) {
    const Eigen::Index f = bins - 1 - row;  // low frequencies at the bottom
    for (Eigen::Index t = 0; t < frames; ++t) {
      if (t) out << ' ';
      const double v = std::clamp(mask.values(t, f), 0.0, 1.0);
      out << static_cast<int>(std::lround(255.0 * (1.0 - v)));
    }
    out << '\n';
  }
  if (!out) throw IoError("failed writing mask PGM: " + path.string());
}

}  // namespace kissgev
