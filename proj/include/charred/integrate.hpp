#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace charred {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double h_init = 0.0;  // 0 = choose automatically
  double h_min = 0.0;   // 0 = 1e-12 * span
  double h_max = 0.0;   // 0 = span
  double u_max = 1e8;   // blow-up threshold on the unknown
  double x_max = 1e8;   // blow-up threshold on characteristic position
};

// dydt must be filled for the given (t, y); may throw ExprError for domain
// failures, which the stepper treats as a rejected step.
using OdeRhs =
    std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

// Per-component absolute-value thresholds that terminate integration.
struct Watch {
  std::vector<std::pair<std::size_t, double>> thresholds;
};

enum class Termination { Completed, Blowup, StepUnderflow, DomainError };

struct TrajectoryStep {
  double t0, t1;
  std::vector<double> y0, y1;
  std::vector<double> k1, k3, k4, k5, k6, k7;  // stage derivatives for dense output
};

class Trajectory {
 public:
  Termination status = Termination::Completed;
  double t_begin = 0.0;
  double t_end = 0.0;  // last covered time; blow-up time t* when status == Blowup
  std::vector<double> y_end;
  std::vector<double> f_end;  // derivative at the last accepted point
  std::string error;
  std::vector<TrajectoryStep> steps;

  bool covers(double t) const;
  std::vector<double> sample(double t) const;
  void sample_into(double t, std::span<double> out) const;

  std::size_t dimension() const { return y_end.size(); }
};

Trajectory integrate_adaptive(const OdeRhs& rhs, std::span<const double> y0, double t0,
                              double t1, const IntegratorConfig& cfg,
                              const Watch& watch = {});

// One fixed Dormand-Prince 5(4) step; returns false if the right-hand side
// failed. Used by convergence tests.
bool dopri_step(const OdeRhs& rhs, double t, double h, std::span<const double> y,
                std::span<double> y_out, std::span<double> err_out);

}  // namespace charred
