#pragma once

#include <filesystem>

#include "dropflow/curve.hpp"

namespace dropflow::svg {

struct SvgOptions {
  bool draw_normals = false;
  bool draw_ubc_disk = false;  // osculating UBC disk at the minimizing point
  double stroke_width = 0.01;
  int canvas_px = 800;
};

// Deterministic SVG rendering of a boundary: outer stroked solid, holes
// dashed; optional normals and the UBC disk at its minimizing point.
void export_svg(const std::filesystem::path& path, const Boundary& boundary,
                const SvgOptions& opts = {});

}  // namespace dropflow::svg
