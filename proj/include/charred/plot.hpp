#pragma once

#include <string>

#include "charred/solve.hpp"

namespace charred {

struct PlotError : std::runtime_error {
  explicit PlotError(const std::string& msg) : std::runtime_error(msg) {}
};

// All renderers return a complete standalone SVG document. Output is fully
// deterministic: no timestamps, fixed numeric formatting, and cell/contour
// geometry derived only from the grid contents. Cells touching any non-ok
// point are left blank (heatmap) or cut out of the polylines.

// Filled per-cell heatmap with a viridis color ramp and a value legend.
std::string svg_heatmap(const SolutionGrid& grid);

// Marching-squares iso-lines at `levels` evenly spaced values between the
// grid's min and max (over ok points).
std::string svg_contour(const SolutionGrid& grid, int levels = 10);

// u versus x along the grid row nearest to t_slice; non-ok points break the
// polyline into segments.
std::string svg_slice(const SolutionGrid& grid, double t_slice);

}  // namespace charred
