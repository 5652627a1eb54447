#include "charred/characteristics.hpp"

#include <cmath>

namespace charred {

namespace {

OdeRhs advection_rhs(const Expression& a) {
  return [&a](double t, std::span<const double> y, std::span<double> dydt) {
    dydt[0] = a.evaluate(Bindings().set(Var::X, y[0]).set(Var::T, t));
  };
}

[[noreturn]] void fail(const char* op, const Trajectory& traj) {
  const char* why = traj.status == Termination::Blowup          ? "position blow-up"
                    : traj.status == Termination::StepUnderflow ? "step-size underflow"
                                                                : "domain error";
  throw CharacteristicError(std::string(op) + ": " + why + " at t=" +
                            std::to_string(traj.t_end) +
                            (traj.error.empty() ? "" : " (" + traj.error + ")"));
}

}  // namespace

CharacteristicCurve trace_forward(const Expression& a, double x0, double t0, double t1,
                                  const IntegratorConfig& cfg) {
  if (!(t1 > t0)) throw CharacteristicError("trace_forward: t1 must exceed t0");
  auto rhs = advection_rhs(a);
  Watch watch{{{0, cfg.x_max}}};
  double y0[1] = {x0};
  Trajectory traj = integrate_adaptive(rhs, y0, t0, t1, cfg, watch);
  if (traj.status != Termination::Completed) fail("trace_forward", traj);
  return CharacteristicCurve(x0, std::move(traj));
}

double trace_backward(const Expression& a, double x, double t, double t0,
                      const IntegratorConfig& cfg, bool check) {
  if (t == t0) return x;
  auto rhs = advection_rhs(a);
  Watch watch{{{0, cfg.x_max}}};
  double y0[1] = {x};
  Trajectory traj = integrate_adaptive(rhs, y0, t, t0, cfg, watch);
  if (traj.status != Termination::Completed) fail("trace_backward", traj);
  double x0 = traj.y_end[0];
  if (check) {
    Trajectory fwd = integrate_adaptive(rhs, traj.y_end, t0, t, cfg, watch);
    if (fwd.status != Termination::Completed) fail("trace_backward round trip", fwd);
    if (std::fabs(fwd.y_end[0] - x) > 1e-7 * (1.0 + std::fabs(x)))
      throw CharacteristicError("trace_backward: round-trip check failed");
  }
  return x0;
}

double damping_integral(const Expression& b, double t0, double t,
                        const IntegratorConfig& cfg) {
  if (t == t0) return 0.0;
  OdeRhs rhs = [&b](double s, std::span<const double>, std::span<double> dydt) {
    dydt[0] = b.evaluate(Bindings().set(Var::T, s));
  };
  double y0[1] = {0.0};
  Trajectory traj = integrate_adaptive(rhs, y0, t0, t, cfg);
  if (traj.status != Termination::Completed)
    throw CharacteristicError("damping_integral: singular integrand on interval" +
                              (traj.error.empty() ? "" : " (" + traj.error + ")"));
  return traj.y_end[0];
}

}  // namespace charred
