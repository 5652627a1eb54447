#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charred/integrate.hpp"
#include "charred/problem.hpp"
#include "charred/reduce.hpp"

namespace charred {

enum class PointStatus { Ok, Blowup, OutOfDomain, Failed };

const char* to_token(PointStatus s);
std::optional<PointStatus> status_from_token(const std::string& tok);

// Rectangular solution lattice. Values are stored row-major over t then x:
// index(i,j) = j*nx + i with i the x index and j the t index.
struct SolutionGrid {
  std::string problem_id;
  IntegratorConfig config;
  std::vector<double> xs, ts;
  std::vector<double> u;
  std::vector<PointStatus> status;
  std::vector<double> blowup_time;  // per x column; NaN when none

  std::size_t nx() const { return xs.size(); }
  std::size_t nt() const { return ts.size(); }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx() + i; }
  double value(std::size_t i, std::size_t j) const { return u[index(i, j)]; }
  PointStatus state(std::size_t i, std::size_t j) const { return status[index(i, j)]; }
};

// Backward-trace + pointwise reduced integration for every grid column.
// threads = 0 picks CHARRED_THREADS or the hardware concurrency.
SolutionGrid solve_on_grid(const ProblemCase& pc, const GridSpec& grid,
                           const IntegratorConfig& cfg, int threads = 0);

// The unknown advanced in t at fixed spatial position x (one grid column).
Trajectory solve_column(const ReducedSystem& rs, double x, double t_target);

// Field values sampled along the characteristic with foot x0, together with
// k = u_t e^B (the K(u) of the reduction) at each sample.
struct CharacteristicSamples {
  double x0;
  std::vector<double> t, x, u, k;
};

CharacteristicSamples solve_along_characteristic(const ProblemCase& pc, double x0,
                                                 double t1, const IntegratorConfig& cfg,
                                                 int samples = 17);

// Smallest t in (t0, t_max] at which the solution at fixed x blows up.
std::optional<double> estimate_blowup_time(const ProblemCase& pc, double x_column,
                                           double t_max, const IntegratorConfig& cfg);

}  // namespace charred
