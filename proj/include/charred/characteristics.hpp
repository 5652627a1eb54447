#pragma once

#include <stdexcept>

#include "charred/expr.hpp"
#include "charred/integrate.hpp"

namespace charred {

struct CharacteristicError : std::runtime_error {
  explicit CharacteristicError(const std::string& msg) : std::runtime_error(msg) {}
};

// A curve x(t) with dx/dt = a(x,t), dense-output interpolable on its span.
class CharacteristicCurve {
 public:
  CharacteristicCurve(double x0, Trajectory traj) : x0_(x0), traj_(std::move(traj)) {}

  double foot() const { return x0_; }
  double t_begin() const { return traj_.t_begin; }
  double t_end() const { return traj_.t_end; }
  double x_at(double t) const { return traj_.sample(t)[0]; }
  const Trajectory& trajectory() const { return traj_; }

 private:
  double x0_;
  Trajectory traj_;
};

CharacteristicCurve trace_forward(const Expression& a, double x0, double t0, double t1,
                                  const IntegratorConfig& cfg = {});

// Foot point x0 of the characteristic through (x, t), i.e. its position at t0.
// When check is set the result is validated by re-tracing forward (1e-7 in x).
double trace_backward(const Expression& a, double x, double t, double t0,
                      const IntegratorConfig& cfg = {}, bool check = true);

// B(t) = integral of b over [t0, t], signed; B(t0) = 0.
double damping_integral(const Expression& b, double t0, double t,
                        const IntegratorConfig& cfg = {});

}  // namespace charred
