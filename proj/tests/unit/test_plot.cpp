#include "charred/plot.hpp"
#include "charred/problem.hpp"
#include "doctest.h"

using namespace charred;

namespace {

SolutionGrid demo_grid() {
  ProblemCase pc = builtin_example("E2");
  GridSpec g{-1.0, 1.0, 0.0, 0.5, 17, 17};
  return solve_on_grid(pc, g, IntegratorConfig{}, 1);
}

SolutionGrid masked_grid() {
  ProblemCase pc = builtin_example("E2");
  GridSpec g{1.5, 2.5, 0.0, 1.0, 17, 17};  // blow-up region -> non-ok points
  return solve_on_grid(pc, g, IntegratorConfig{}, 1);
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

}  // namespace

TEST_CASE("SVG output is deterministic") {
  SolutionGrid grid = demo_grid();
  CHECK(svg_heatmap(grid) == svg_heatmap(grid));
  CHECK(svg_contour(grid) == svg_contour(grid));
  CHECK(svg_slice(grid, 0.25) == svg_slice(grid, 0.25));
}

TEST_CASE("SVG documents are well formed") {
  SolutionGrid grid = demo_grid();
  for (const std::string& svg :
       {svg_heatmap(grid), svg_contour(grid), svg_slice(grid, 0.25)}) {
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(svg.find("timestamp") == std::string::npos);
  }
}

TEST_CASE("non-ok cells leave gaps in the heatmap") {
  SolutionGrid full = demo_grid();
  SolutionGrid masked = masked_grid();
  std::size_t ok_cells = 0;
  for (std::size_t j = 0; j + 1 < masked.nt(); ++j)
    for (std::size_t i = 0; i + 1 < masked.nx(); ++i) {
      bool ok = true;
      for (int dj = 0; dj <= 1; ++dj)
        for (int di = 0; di <= 1; ++di)
          ok = ok && masked.state(i + di, j + dj) == PointStatus::Ok;
      ok_cells += ok;
    }
  REQUIRE(ok_cells < 16 * 16);
  // rect count: background + cells + legend bands (64) + legend labels aside
  std::size_t full_rects = count(svg_heatmap(full), "<rect");
  std::size_t masked_rects = count(svg_heatmap(masked), "<rect");
  CHECK(full_rects - masked_rects == (16 * 16 - ok_cells));
}

TEST_CASE("contour emits the default ten levels at most") {
  SolutionGrid grid = demo_grid();
  std::string svg = svg_contour(grid);
  CHECK(count(svg, "<path") <= 10);
  CHECK(count(svg, "<path") >= 5);
  CHECK_THROWS_AS(svg_contour(grid, 0), PlotError);
}

TEST_CASE("slice picks the nearest t row and breaks at gaps") {
  SolutionGrid masked = masked_grid();
  // mid slice crosses blown-up columns; all-blown slices are rejected
  std::string svg = svg_slice(masked, 0.3);
  CHECK(svg.find("<path") != std::string::npos);
  CHECK_THROWS_AS(svg_slice(masked, masked.ts.back()), PlotError);
  // the slice at the initial line is a single polyline
  std::string svg0 = svg_slice(masked, 0.0);
  CHECK(count(svg0, "M") >= 1);
}

TEST_CASE("empty grids are rejected") {
  SolutionGrid grid;
  grid.problem_id = "empty";
  grid.xs = {0.0, 1.0};
  grid.ts = {0.0, 1.0};
  grid.u = {0, 0, 0, 0};
  grid.status.assign(4, PointStatus::Failed);
  grid.blowup_time.assign(2, 0.0);
  CHECK_THROWS_AS(svg_heatmap(grid), PlotError);
  CHECK_THROWS_AS(svg_slice(grid, 0.0), PlotError);
}
