#include "charred/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace charred {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 540;
constexpr int kMarginL = 60, kMarginR = 90, kMarginT = 30, kMarginB = 50;
constexpr int kPlotW = kWidth - kMarginL - kMarginR;
constexpr int kPlotH = kHeight - kMarginT - kMarginB;

const unsigned char kViridis[256][3] = {
#include "viridis_lut.inc"
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string color_at(double frac) {
  int idx = static_cast<int>(std::lround(std::clamp(frac, 0.0, 1.0) * 255.0));
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", kViridis[idx][0], kViridis[idx][1],
                kViridis[idx][2]);
  return buf;
}

struct ValueRange {
  double lo = 0.0, hi = 1.0;
  bool any = false;
};

ValueRange ok_range(const SolutionGrid& grid) {
  ValueRange r;
  r.lo = std::numeric_limits<double>::infinity();
  r.hi = -r.lo;
  for (std::size_t j = 0; j < grid.nt(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i)
      if (grid.state(i, j) == PointStatus::Ok) {
        r.lo = std::min(r.lo, grid.value(i, j));
        r.hi = std::max(r.hi, grid.value(i, j));
        r.any = true;
      }
  if (!r.any) throw PlotError("no ok points to plot");
  if (r.hi - r.lo < 1e-300) r.hi = r.lo + 1.0;
  return r;
}

struct Mapper {
  double x_min, x_max, t_min, t_max;
  double px(double x) const {
    return kMarginL + (x - x_min) / (x_max - x_min) * kPlotW;
  }
  // t increases upward
  double py(double t) const {
    return kMarginT + (t_max - t) / (t_max - t_min) * kPlotH;
  }
};

Mapper mapper_for(const SolutionGrid& grid) {
  return {grid.xs.front(), grid.xs.back(), grid.ts.front(), grid.ts.back()};
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
     << "\">\n";
  os << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << kMarginL << "\" y=\"20\" font-family=\"monospace\" "
        "font-size=\"13\">"
     << title << "</text>\n";
}

void axes_labels(std::ostringstream& os, const Mapper& m, const char* ylab) {
  os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\"" << kPlotW
     << "\" height=\"" << kPlotH << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double x = m.x_min + (m.x_max - m.x_min) * k / 4.0;
    double t = m.t_min + (m.t_max - m.t_min) * k / 4.0;
    os << "<text x=\"" << fmt2(m.px(x)) << "\" y=\"" << kHeight - kMarginB + 18
       << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"middle\">"
       << fmt(x) << "</text>\n";
    os << "<text x=\"" << kMarginL - 6 << "\" y=\"" << fmt2(m.py(t) + 4)
       << "\" font-family=\"monospace\" font-size=\"11\" text-anchor=\"end\">" << fmt(t)
       << "</text>\n";
  }
  os << "<text x=\"" << kMarginL + kPlotW / 2 << "\" y=\"" << kHeight - 12
     << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">x"
        "</text>\n";
  os << "<text x=\"16\" y=\"" << kMarginT + kPlotH / 2
     << "\" font-family=\"monospace\" font-size=\"12\">" << ylab << "</text>\n";
}

void color_legend(std::ostringstream& os, const ValueRange& r) {
  const int bx = kWidth - kMarginR + 20, bw = 18, by = kMarginT, bh = kPlotH;
  const int bands = 64;
  for (int k = 0; k < bands; ++k) {
    double f0 = static_cast<double>(k) / bands;
    double y = by + bh - (k + 1) * static_cast<double>(bh) / bands;
    os << "<rect x=\"" << bx << "\" y=\"" << fmt2(y) << "\" width=\"" << bw
       << "\" height=\"" << fmt2(static_cast<double>(bh) / bands + 0.5)
       << "\" fill=\"" << color_at(f0) << "\"/>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    double v = r.lo + (r.hi - r.lo) * k / 4.0;
    double y = by + bh - k * static_cast<double>(bh) / 4.0;
    os << "<text x=\"" << bx + bw + 4 << "\" y=\"" << fmt2(y + 4)
       << "\" font-family=\"monospace\" font-size=\"10\">" << fmt(v) << "</text>\n";
  }
}

bool cell_ok(const SolutionGrid& g, std::size_t i, std::size_t j) {
  return g.state(i, j) == PointStatus::Ok && g.state(i + 1, j) == PointStatus::Ok &&
         g.state(i, j + 1) == PointStatus::Ok &&
         g.state(i + 1, j + 1) == PointStatus::Ok;
}

}  // namespace

std::string svg_heatmap(const SolutionGrid& grid) {
  if (grid.nx() < 2 || grid.nt() < 2) throw PlotError("grid too small to plot");
  ValueRange r = ok_range(grid);
  Mapper m = mapper_for(grid);
  std::ostringstream os;
  open_svg(os, grid.problem_id + " : u(x,t)");
  for (std::size_t j = 0; j + 1 < grid.nt(); ++j) {
    for (std::size_t i = 0; i + 1 < grid.nx(); ++i) {
      if (!cell_ok(grid, i, j)) continue;
      double v = 0.25 * (grid.value(i, j) + grid.value(i + 1, j) +
                         grid.value(i, j + 1) + grid.value(i + 1, j + 1));
      double x0 = m.px(grid.xs[i]), x1 = m.px(grid.xs[i + 1]);
      double y1 = m.py(grid.ts[j]), y0 = m.py(grid.ts[j + 1]);
      os << "<rect x=\"" << fmt2(x0) << "\" y=\"" << fmt2(y0) << "\" width=\""
         << fmt2(x1 - x0 + 0.5) << "\" height=\"" << fmt2(y1 - y0 + 0.5)
         << "\" fill=\"" << color_at((v - r.lo) / (r.hi - r.lo)) << "\"/>\n";
    }
  }
  axes_labels(os, m, "t");
  color_legend(os, r);
  os << "</svg>\n";
  return os.str();
}

std::string svg_contour(const SolutionGrid& grid, int levels) {
  if (grid.nx() < 2 || grid.nt() < 2) throw PlotError("grid too small to plot");
  if (levels < 1) throw PlotError("need at least one contour level");
  ValueRange r = ok_range(grid);
  Mapper m = mapper_for(grid);
  std::ostringstream os;
  open_svg(os, grid.problem_id + " : contours of u");

  // marching squares: emit one line segment list per level
  for (int L = 0; L < levels; ++L) {
    double level = r.lo + (r.hi - r.lo) * (L + 1) / (levels + 1.0);
    std::ostringstream path;
    for (std::size_t j = 0; j + 1 < grid.nt(); ++j) {
      for (std::size_t i = 0; i + 1 < grid.nx(); ++i) {
        if (!cell_ok(grid, i, j)) continue;
        // corners: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1)
        double v[4] = {grid.value(i, j), grid.value(i + 1, j),
                       grid.value(i + 1, j + 1), grid.value(i, j + 1)};
        double cx[4] = {grid.xs[i], grid.xs[i + 1], grid.xs[i + 1], grid.xs[i]};
        double ct[4] = {grid.ts[j], grid.ts[j], grid.ts[j + 1], grid.ts[j + 1]};
        int mask = 0;
        for (int c = 0; c < 4; ++c)
          if (v[c] >= level) mask |= 1 << c;
        if (mask == 0 || mask == 15) continue;
        // crossing point on edge (a -> b)
        auto cross = [&](int a, int b, double& px, double& py) {
          double f = (level - v[a]) / (v[b] - v[a]);
          px = m.px(cx[a] + f * (cx[b] - cx[a]));
          py = m.py(ct[a] + f * (ct[b] - ct[a]));
        };
        static const int kEdges[16][4] = {
            {-1, -1, -1, -1}, {0, 3, -1, -1}, {0, 1, -1, -1}, {1, 3, -1, -1},
            {1, 2, -1, -1},   {0, 1, 2, 3},   {0, 2, -1, -1}, {2, 3, -1, -1},
            {2, 3, -1, -1},   {0, 2, -1, -1}, {0, 3, 1, 2},   {1, 2, -1, -1},
            {1, 3, -1, -1},   {0, 1, -1, -1}, {0, 3, -1, -1}, {-1, -1, -1, -1}};
        // edge e joins corners e and (e+1)%4
        auto edge_pt = [&](int e, double& px, double& py) {
          cross(e, (e + 1) % 4, px, py);
        };
        const int* seg = kEdges[mask];
        for (int s = 0; s < 4 && seg[s] >= 0; s += 2) {
          double x0, y0, x1, y1;
          edge_pt(seg[s], x0, y0);
          edge_pt(seg[s + 1], x1, y1);
          path << 'M' << fmt2(x0) << ' ' << fmt2(y0) << 'L' << fmt2(x1) << ' '
               << fmt2(y1);
        }
      }
    }
    std::string d = path.str();
    if (d.empty()) continue;
    os << "<path d=\"" << d << "\" stroke=\""
       << color_at((level - r.lo) / (r.hi - r.lo))
       << "\" stroke-width=\"1.2\" fill=\"none\"/>\n";
  }
  axes_labels(os, m, "t");
  color_legend(os, r);
  os << "</svg>\n";
  return os.str();
}

std::string svg_slice(const SolutionGrid& grid, double t_slice) {
  if (grid.nx() < 2) throw PlotError("grid too small to plot");
  std::size_t jbest = 0;
  for (std::size_t j = 1; j < grid.nt(); ++j)
    if (std::fabs(grid.ts[j] - t_slice) < std::fabs(grid.ts[jbest] - t_slice))
      jbest = j;

  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  bool any = false;
  for (std::size_t i = 0; i < grid.nx(); ++i)
    if (grid.state(i, jbest) == PointStatus::Ok) {
      lo = std::min(lo, grid.value(i, jbest));
      hi = std::max(hi, grid.value(i, jbest));
      any = true;
    }
  if (!any) throw PlotError("no ok points on the requested slice");
  if (hi - lo < 1e-300) {
    lo -= 0.5;
    hi += 0.5;
  }
  double pad = 0.05 * (hi - lo);
  Mapper m{grid.xs.front(), grid.xs.back(), lo - pad, hi + pad};

  std::ostringstream os;
  open_svg(os, grid.problem_id + " : u(x, t=" + fmt(grid.ts[jbest]) + ")");
  std::ostringstream path;
  bool pen_down = false;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    if (grid.state(i, jbest) != PointStatus::Ok) {
      pen_down = false;
      continue;
    }
    path << (pen_down ? 'L' : 'M') << fmt2(m.px(grid.xs[i])) << ' '
         << fmt2(m.py(grid.value(i, jbest)));
    pen_down = true;
  }
  os << "<path d=\"" << path.str()
     << "\" stroke=\"#30678d\" stroke-width=\"1.5\" fill=\"none\"/>\n";
  axes_labels(os, m, "u");
  os << "</svg>\n";
  return os.str();
}

}  // namespace charred
