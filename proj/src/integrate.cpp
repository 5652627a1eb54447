#include "charred/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "charred/expr.hpp"

namespace charred {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Stages {
  std::vector<double> k1, k2, k3, k4, k5, k6, k7, y1, ytmp;
  explicit Stages(std::size_t n)
      : k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), y1(n), ytmp(n) {}
};

bool finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

// Performs one step; k1 must hold f(t, y) on entry (FSAL). On success k7 holds
// f(t+h, y1). Returns false on rhs failure or non-finite intermediate values.
bool step_core(const OdeRhs& rhs, double t, double h, std::span<const double> y,
               Stages& s, std::span<double> err) {
  const std::size_t n = y.size();
  auto& tmp = s.ytmp;
  try {
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * a21 * s.k1[i];
    rhs(t + c2 * h, tmp, s.k2);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a31 * s.k1[i] + a32 * s.k2[i]);
    rhs(t + c3 * h, tmp, s.k3);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a41 * s.k1[i] + a42 * s.k2[i] + a43 * s.k3[i]);
    rhs(t + c4 * h, tmp, s.k4);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a51 * s.k1[i] + a52 * s.k2[i] + a53 * s.k3[i] + a54 * s.k4[i]);
    rhs(t + c5 * h, tmp, s.k5);
    for (std::size_t i = 0; i < n; ++i)
      tmp[i] = y[i] + h * (a61 * s.k1[i] + a62 * s.k2[i] + a63 * s.k3[i] +
                           a64 * s.k4[i] + a65 * s.k5[i]);
    rhs(t + h, tmp, s.k6);
    for (std::size_t i = 0; i < n; ++i)
      s.y1[i] = y[i] + h * (b1 * s.k1[i] + b3 * s.k3[i] + b4 * s.k4[i] + b5 * s.k5[i] +
                            b6 * s.k6[i]);
    rhs(t + h, s.y1, s.k7);
  } catch (const ExprError&) {
    return false;
  }
  if (!finite(s.y1) || !finite(s.k7)) return false;
  for (std::size_t i = 0; i < n; ++i)
    err[i] = h * (e1 * s.k1[i] + e3 * s.k3[i] + e4 * s.k4[i] + e5 * s.k5[i] +
                  e6 * s.k6[i] + e7 * s.k7[i]);
  return true;
}

void dense_eval(const TrajectoryStep& st, double t, std::span<double> out) {
  const double dt = st.t1 - st.t0;
  const double theta = (t - st.t0) / dt;
  const double X1 = 5.0 * (2558722523.0 - 31403016.0 * theta) / 11282082432.0;
  const double X3 = 100.0 * (882725551.0 - 15701508.0 * theta) / 32700410799.0;
  const double X4 = 25.0 * (443332067.0 - 31403016.0 * theta) / 1880347072.0;
  const double X5 = 32805.0 * (23143187.0 - 3489224.0 * theta) / 199316789632.0;
  const double X6 = 55.0 * (29972135.0 - 7076736.0 * theta) / 822651844.0;
  const double X7 = 10.0 * (7414447.0 - 829305.0 * theta) / 29380423.0;
  const double tm1 = theta - 1.0;
  const double A = theta * theta * (3.0 - 2.0 * theta);
  const double B = theta * theta * tm1;
  const double C = theta * theta * tm1 * tm1;
  const double D = theta * tm1 * tm1;
  const double w1 = A * b1 - C * X1 + D;
  const double w3 = A * b3 + C * X3;
  const double w4 = A * b4 - C * X4;
  const double w5 = A * b5 + C * X5;
  const double w6 = A * b6 - C * X6;
  const double w7 = B + C * X7;
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = st.y0[i] + dt * (w1 * st.k1[i] + w3 * st.k3[i] + w4 * st.k4[i] +
                              w5 * st.k5[i] + w6 * st.k6[i] + w7 * st.k7[i]);
}

// Earliest threshold crossing inside an accepted step, located by bisection on
// the dense interpolant.
double locate_crossing(const TrajectoryStep& st, const Watch& watch, double span) {
  const std::size_t n = st.y0.size();
  std::vector<double> buf(n);
  auto exceeded = [&](double t) {
    dense_eval(st, t, buf);
    for (auto [idx, thr] : watch.thresholds)
      if (std::fabs(buf[idx]) > thr) return true;
    return false;
  };
  double lo = st.t0, hi = st.t1;
  const double tol = 1e-10 * span;
  while (std::fabs(hi - lo) > tol) {
    double mid = 0.5 * (lo + hi);
    if (exceeded(mid)) hi = mid;
    else lo = mid;
  }
  return lo;
}

}  // namespace

bool Trajectory::covers(double t) const {
  if (steps.empty()) return t == t_begin;
  double lo = std::min(t_begin, t_end), hi = std::max(t_begin, t_end);
  return t >= lo - 1e-14 * (hi - lo + 1.0) && t <= hi + 1e-14 * (hi - lo + 1.0);
}

void Trajectory::sample_into(double t, std::span<double> out) const {
  if (!covers(t)) throw std::out_of_range("sample time outside trajectory span");
  if (steps.empty()) {
    std::copy(y_end.begin(), y_end.end(), out.begin());
    return;
  }
  const bool fwd = t_end >= t_begin;
  // binary search for the step containing t
  std::size_t lo = 0, hi = steps.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    bool after = fwd ? (t > steps[mid].t1) : (t < steps[mid].t1);
    if (after) lo = mid + 1;
    else hi = mid;
  }
  dense_eval(steps[lo], t, out);
}

std::vector<double> Trajectory::sample(double t) const {
  std::vector<double> out(dimension());
  sample_into(t, out);
  return out;
}

bool dopri_step(const OdeRhs& rhs, double t, double h, std::span<const double> y,
                std::span<double> y_out, std::span<double> err_out) {
  Stages s(y.size());
  try {
    rhs(t, y, s.k1);
  } catch (const ExprError&) {
    return false;
  }
  if (!step_core(rhs, t, h, y, s, err_out)) return false;
  std::copy(s.y1.begin(), s.y1.end(), y_out.begin());
  return true;
}

Trajectory integrate_adaptive(const OdeRhs& rhs, std::span<const double> y0, double t0,
                              double t1, const IntegratorConfig& cfg, const Watch& watch) {
  Trajectory traj;
  const std::size_t n = y0.size();
  traj.t_begin = t0;
  traj.t_end = t0;
  traj.y_end.assign(y0.begin(), y0.end());
  traj.f_end.assign(n, 0.0);
  if (t1 == t0) return traj;

  const double span = std::fabs(t1 - t0);
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double h_min = cfg.h_min > 0 ? cfg.h_min : 1e-12 * span;
  const double h_max = cfg.h_max > 0 ? cfg.h_max : span;
  double h = cfg.h_init > 0 ? cfg.h_init : std::min(h_max, span / 100.0);

  Stages s(n);
  std::vector<double> y(y0.begin(), y0.end());
  std::vector<double> err(n);
  double t = t0;

  try {
    rhs(t, y, s.k1);
  } catch (const ExprError& e) {
    traj.status = Termination::DomainError;
    traj.error = e.what();
    return traj;
  }

  auto exceeds_watch = [&](std::span<const double> yy) {
    for (auto [idx, thr] : watch.thresholds)
      if (std::fabs(yy[idx]) > thr) return true;
    return false;
  };

  std::string last_error;
  while (dir * (t1 - t) > 0) {
    h = std::min(h, h_max);
    if (h > std::fabs(t1 - t)) h = std::fabs(t1 - t);

    bool ok = step_core(rhs, t, dir * h, y, s, err);
    double scaled = 0.0;
    if (ok) {
      for (std::size_t i = 0; i < n; ++i) {
        double sc = cfg.abs_tol +
                    cfg.rel_tol * std::max(std::fabs(y[i]), std::fabs(s.y1[i]));
        scaled += (err[i] / sc) * (err[i] / sc);
      }
      scaled = std::sqrt(scaled / static_cast<double>(n));
    }

    if (!ok || scaled > 1.0) {
      double factor = ok ? std::max(0.2, 0.9 * std::pow(scaled, -0.2)) : 0.5;
      h *= factor;
      if (h < h_min) {
        traj.status = Termination::StepUnderflow;
        traj.t_end = t;
        traj.y_end = y;
        traj.f_end = s.k1;
        traj.error = ok ? "step size underflow" : "step size underflow: " + last_error;
        return traj;
      }
      continue;
    }

    TrajectoryStep st;
    st.t0 = t;
    st.t1 = t + dir * h;
    st.y0 = y;
    st.y1 = s.y1;
    st.k1 = s.k1;
    st.k3 = s.k3;
    st.k4 = s.k4;
    st.k5 = s.k5;
    st.k6 = s.k6;
    st.k7 = s.k7;

    if (exceeds_watch(s.y1)) {
      // Keep the full step (dense coefficients are tied to its length); the
      // trajectory's covered span simply ends at t*.
      double tstar = locate_crossing(st, watch, span);
      traj.steps.push_back(std::move(st));
      traj.status = Termination::Blowup;
      traj.t_end = tstar;
      traj.y_end.resize(n);
      dense_eval(traj.steps.back(), tstar, traj.y_end);
      traj.f_end = s.k7;
      return traj;
    }

    traj.steps.push_back(std::move(st));
    t += dir * h;
    y = s.y1;
    s.k1 = s.k7;  // FSAL
    traj.t_end = t;
    traj.y_end = y;
    traj.f_end = s.k1;

    double factor = scaled > 0.0
                        ? std::clamp(0.9 * std::pow(scaled, -0.2), 0.2, 5.0)
                        : 5.0;
    h *= factor;
  }
  traj.status = Termination::Completed;
  return traj;
}

}  // namespace charred
