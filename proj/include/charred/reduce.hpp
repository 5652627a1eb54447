#pragma once

#include <optional>
#include <string>

#include "charred/integrate.hpp"
#include "charred/problem.hpp"

namespace charred {

struct ODEClass {
  enum class Kind { Separable, Linear, Riccati, Abel, General };
  Kind kind = Kind::General;
  std::optional<int> degree;  // polynomial degree of the reduced right-hand side
};

std::string to_string(const ODEClass& c);

ODEClass classify_reduced(const ProblemCase& pc);

// State of the reduced system on the characteristic with foot x0, at t = t0.
// Gauge: K(u0) = 0 for class I, so H(t0) carries the whole initial slope.
struct ReducedInitialState {
  double x0;
  double B;  // always 0 at t0
  double H;  // class I only
  double k;
  double u;
};

// The reduction u_t(x,t) = (H + K(u)) e^{-B}  (class I)
//               u_t(x,t) = K(u) e^{-B}        (class II)
// realized pointwise: H and the integration constant of K are recovered per
// characteristic by tracing backward to the initial line, and K is integrated
// as an ODE in u from the foot-point data. The unknown u itself is then
// advanced in t at fixed x by the caller (see module solve).
class ReducedSystem {
 public:
  // t_lo/t_hi bound the times at which rhs() will be queried; the damping
  // integral B is densely precomputed on that span once.
  ReducedSystem(ProblemCase pc, IntegratorConfig cfg, double t_lo, double t_hi);

  const ProblemCase& problem() const { return pc_; }
  const IntegratorConfig& config() const { return cfg_; }

  ReducedInitialState initial_state(double x0) const;

  double damping(double t) const;  // B(t), B(t0) = 0

  struct TraceResult {
    double x0;    // foot point
    double load;  // class I: integral of alpha(x(s),s) e^{B(s)} over [t0,t]
  };
  TraceResult backtrace(double x, double t) const;

  // K(u) on the characteristic with foot x0:
  //   class I: integral of G from u0(x0) to u (gauge K(u0)=0)
  //   class II: solution of K^m K' = F(u,K) from K(u0(x0)) = ut0(x0)
  double k_on_characteristic(double x0, double u) const;

  // u_t at the point (x,t) when the unknown there has value u.
  double rhs(double x, double t, double u) const;

  double initial_u(double x0) const;
  double initial_ut(double x0) const;

  // Shifts the H/K split by a constant (observable only through the sum);
  // exists for the gauge-invariance check.
  void set_gauge_shift(double c) { gauge_ = c; }

 private:
  ProblemCase pc_;
  IntegratorConfig cfg_;
  IntegratorConfig inner_cfg_;
  Trajectory b_fwd_, b_bwd_;  // damping integral, forward/backward of t0
  bool b_is_zero_ = false;
  double t_lo_, t_hi_;
  double gauge_ = 0.0;
};

enum class RootBranch { Principal, Alternate };

// Real root K of (K - 2u)^2 (K + u) = A. For A = 0 the two printed branches
// are returned exactly; otherwise the closed cube-root formula is used where
// its real-branch conditions hold, with safeguarded bisection as fallback.
double real_root_K(double u, double A, RootBranch branch = RootBranch::Principal);

// Human-readable description of the reduction, for the CLI.
std::string describe_reduction(const ProblemCase& pc);

}  // namespace charred
