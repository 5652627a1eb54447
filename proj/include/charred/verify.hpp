#pragma once

#include "charred/problem.hpp"
#include "charred/solve.hpp"

namespace charred {

struct VerifyError : std::runtime_error {
  explicit VerifyError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResidualReport {
  double max_abs = 0.0;
  double mean_abs = 0.0;
  std::size_t count_evaluated = 0;
  std::size_t count_skipped = 0;
  double worst_x = 0.0, worst_t = 0.0;
};

// Residual of the original second-order PDE at one point, given the field
// value and its derivatives there plus the damping integral B(t).
double pde_residual(const ProblemCase& pc, double x, double t, double u, double ut,
                    double ux, double utt, double uxt, double B);

// Second-order central differences on the grid, residual of the original PDE.
// Points without a full 3x3 neighborhood of ok cells are skipped.
ResidualReport fd_residual(const SolutionGrid& grid, const ProblemCase& pc,
                           const IntegratorConfig& cfg = {});

// |u_num - u_oracle| over ok points inside the oracle's validity domain.
ResidualReport oracle_compare(const SolutionGrid& grid, const ProblemCase& pc);

// |relation(x, t, u_num)| over ok points inside the validity domain.
ResidualReport implicit_residual(const SolutionGrid& grid, const ProblemCase& pc);

}  // namespace charred
