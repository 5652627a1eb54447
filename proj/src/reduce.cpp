#include "charred/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "charred/characteristics.hpp"

namespace charred {

namespace {

ODEClass class_from_degree(int reduced_degree) {
  ODEClass c;
  c.degree = reduced_degree;
  switch (reduced_degree) {
    case 0:
    case 1: c.kind = ODEClass::Kind::Linear; break;
    case 2: c.kind = ODEClass::Kind::Riccati; break;
    case 3: c.kind = ODEClass::Kind::Abel; break;
    default: c.kind = ODEClass::Kind::General; break;
  }
  return c;
}

}  // namespace

std::string to_string(const ODEClass& c) {
  const char* name = nullptr;
  switch (c.kind) {
    case ODEClass::Kind::Separable: name = "separable"; break;
    case ODEClass::Kind::Linear: name = "linear"; break;
    case ODEClass::Kind::Riccati: name = "riccati"; break;
    case ODEClass::Kind::Abel: name = "abel"; break;
    case ODEClass::Kind::General: name = "general"; break;
  }
  std::string s = name;
  if (c.degree) s += " (degree " + std::to_string(*c.degree) + ")";
  return s;
}

ODEClass classify_reduced(const ProblemCase& pc) {
  if (pc.pde_class == 1) {
    auto profile = pc.one.G.polynomial_profile(Var::U);
    if (profile) return class_from_degree(profile->degree + 1);
    return ODEClass{ODEClass::Kind::General, std::nullopt};
  }
  auto vars = pc.two.F.variables();
  bool uses_s = vars[static_cast<std::size_t>(Var::S)];
  bool uses_w = vars[static_cast<std::size_t>(Var::W)];
  if (!uses_s) {
    // K^m K' = F(K): autonomous in K, separable regardless of m
    return ODEClass{ODEClass::Kind::Separable, std::nullopt};
  }
  if (!uses_w && pc.two.m == 0) {
    auto profile = pc.two.F.polynomial_profile(Var::S);
    if (profile) return class_from_degree(profile->degree + 1);
  }
  return ODEClass{ODEClass::Kind::General, std::nullopt};
}

ReducedSystem::ReducedSystem(ProblemCase pc, IntegratorConfig cfg, double t_lo,
                             double t_hi)
    : pc_(std::move(pc)), cfg_(cfg), t_lo_(t_lo), t_hi_(t_hi) {
  inner_cfg_ = cfg_;
  inner_cfg_.rel_tol = std::max(cfg_.rel_tol * 1e-2, 1e-13);
  inner_cfg_.abs_tol = std::max(cfg_.abs_tol * 1e-2, 1e-14);
  inner_cfg_.h_min = 0.0;
  inner_cfg_.h_max = 0.0;
  inner_cfg_.h_init = 0.0;

  const Expression& b = pc_.pde_class == 1 ? pc_.one.b : pc_.two.b;
  auto profile = b.polynomial_profile(Var::T);
  b_is_zero_ = profile && profile->degree == 0 && profile->coefficients[0] == 0.0;

  const double t0 = pc_.initial.t0;
  t_lo_ = std::min(t_lo_, t0);
  t_hi_ = std::max(t_hi_, t0);
  if (!b_is_zero_) {
    OdeRhs rhs = [&b](double s, std::span<const double>, std::span<double> d) {
      d[0] = b.evaluate(Bindings().set(Var::T, s));
    };
    double y0[1] = {0.0};
    if (t_hi_ > t0) {
      b_fwd_ = integrate_adaptive(rhs, y0, t0, t_hi_, inner_cfg_);
      if (b_fwd_.status != Termination::Completed)
        throw CharacteristicError("damping integral singular on [t0, t_max]");
    }
    if (t_lo_ < t0) {
      b_bwd_ = integrate_adaptive(rhs, y0, t0, t_lo_, inner_cfg_);
      if (b_bwd_.status != Termination::Completed)
        throw CharacteristicError("damping integral singular on [t_min, t0]");
    }
  }
}

double ReducedSystem::damping(double t) const {
  if (b_is_zero_) return 0.0;
  const double t0 = pc_.initial.t0;
  if (t == t0) return 0.0;
  const Trajectory& traj = t > t0 ? b_fwd_ : b_bwd_;
  double out[1];
  traj.sample_into(t, out);
  return out[0];
}

double ReducedSystem::initial_u(double x0) const {
  return pc_.initial.u0.evaluate(Bindings().set(Var::X, x0));
}

double ReducedSystem::initial_ut(double x0) const {
  return pc_.initial.ut0.evaluate(Bindings().set(Var::X, x0));
}

ReducedInitialState ReducedSystem::initial_state(double x0) const {
  double u0 = initial_u(x0);
  double ut0 = initial_ut(x0);
  if (!std::isfinite(u0) || !std::isfinite(ut0))
    throw ProblemError("non-finite initial data at x0=" + std::to_string(x0));
  if (pc_.pde_class == 1) return {x0, 0.0, ut0, 0.0, u0};
  if (pc_.two.m > 0 && std::fabs(ut0) < 1e-12)
    throw ProblemError("singular initial k at x0=" + std::to_string(x0));
  return {x0, 0.0, 0.0, ut0, u0};
}

ReducedSystem::TraceResult ReducedSystem::backtrace(double x, double t) const {
  const double t0 = pc_.initial.t0;
  if (t == t0) return {x, 0.0};
  const Expression& a = pc_.pde_class == 1 ? pc_.one.a : pc_.two.a;
  if (pc_.pde_class == 2) {
    double x0 = trace_backward(a, x, t, t0, cfg_, /*check=*/false);
    return {x0, 0.0};
  }
  // class I: accumulate the H-load integral alongside the position
  const Expression& alpha = pc_.one.alpha;
  OdeRhs rhs = [&](double s, std::span<const double> y, std::span<double> d) {
    Bindings bind;
    bind.set(Var::X, y[0]).set(Var::T, s);
    d[0] = a.evaluate(bind);
    d[1] = alpha.evaluate(bind) * std::exp(damping(s));
  };
  double y0[2] = {x, 0.0};
  Watch watch{{{0, cfg_.x_max}}};
  Trajectory traj = integrate_adaptive(rhs, y0, t, t0, cfg_, watch);
  if (traj.status != Termination::Completed)
    throw ExprError(ExprError::Kind::Domain,
                    "characteristic trace failed: " + traj.error);
  // integrated from t down to t0, so the accumulated value is -integral
  return {traj.y_end[0], -traj.y_end[1]};
}

double ReducedSystem::k_on_characteristic(double x0, double u) const {
  double u_start = initial_u(x0);
  if (pc_.pde_class == 1) {
    // K(u) = integral of G from u0(x0) to u, plus the test-only gauge shift
    if (u == u_start) return gauge_;
    const Expression& G = pc_.one.G;
    OdeRhs rhs = [&G](double s, std::span<const double>, std::span<double> d) {
      d[0] = G.evaluate(Bindings().set(Var::U, s));
    };
    double y0[1] = {0.0};
    Trajectory traj = integrate_adaptive(rhs, y0, u_start, u, inner_cfg_);
    if (traj.status != Termination::Completed)
      throw ExprError(ExprError::Kind::Domain, "K quadrature failed: " + traj.error);
    return traj.y_end[0] + gauge_;
  }
  double k_start = initial_ut(x0);
  if (u == u_start) return k_start;
  const Expression& F = pc_.two.F;
  const int m = pc_.two.m;
  OdeRhs rhs = [&F, m](double s, std::span<const double> y, std::span<double> d) {
    double k = y[0];
    if (m > 0 && std::fabs(k) < 1e-12)
      throw ExprError(ExprError::Kind::Domain, "K below floor in K^m K' = F");
    double f = F.evaluate(Bindings().set(Var::S, s).set(Var::W, k));
    d[0] = m == 0 ? f : f / std::pow(k, m);
    if (!std::isfinite(d[0]))
      throw ExprError(ExprError::Kind::Domain, "non-finite K'(u)");
  };
  double y0[1] = {k_start};
  Watch watch{{{0, cfg_.u_max}}};
  Trajectory traj = integrate_adaptive(rhs, y0, u_start, u, inner_cfg_, watch);
  if (traj.status != Termination::Completed)
    throw ExprError(ExprError::Kind::Domain, "K integration failed: " + traj.error);
  return traj.y_end[0];
}

double ReducedSystem::rhs(double x, double t, double u) const {
  TraceResult tr = backtrace(x, t);
  double eB = std::exp(-damping(t));
  if (pc_.pde_class == 1) {
    double h = initial_ut(tr.x0) - gauge_ + tr.load;
    double k = k_on_characteristic(tr.x0, u);
    return (h + k) * eB;
  }
  return k_on_characteristic(tr.x0, u) * eB;
}

// ---------------------------------------------------------------------------

namespace {

double cubic_residual(double K, double u, double A) {
  double d = K - 2.0 * u;
  return d * d * (K + u) - A;
}

// All real roots of (K-2u)^2 (K+u) = A by scan + bisection, ascending.
std::vector<double> cubic_roots_scan(double u, double A) {
  double radius = 4.0 * (1.0 + std::fabs(u)) + 2.0 * std::cbrt(std::fabs(A));
  const int steps = 4000;
  std::vector<double> roots;
  double prev_k = -radius;
  double prev_g = cubic_residual(prev_k, u, A);
  for (int i = 1; i <= steps; ++i) {
    double k = -radius + 2.0 * radius * i / steps;
    double g = cubic_residual(k, u, A);
    if (g == 0.0) roots.push_back(k);
    else if (prev_g * g < 0.0) {
      double lo = prev_k, hi = k;
      for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        double gm = cubic_residual(mid, u, A);
        if (gm == 0.0) { lo = hi = mid; break; }
        if (gm * prev_g < 0.0) hi = mid;
        else lo = mid;
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_k = k;
    prev_g = g;
  }
  return roots;
}

}  // namespace

double real_root_K(double u, double A, RootBranch branch) {
  if (A == 0.0) return branch == RootBranch::Principal ? 2.0 * u : -u;

  double tol = 1e-10 * std::max({1.0, std::fabs(A), std::fabs(u * u * u)});
  if (branch == RootBranch::Principal) {
    double disc = A * A - 4.0 * A * u * u * u;
    if (disc >= 0.0) {
      double s = std::cbrt(std::sqrt(disc) - 2.0 * u * u * u + A);
      if (s != 0.0) {
        double K = s / std::cbrt(2.0) + std::cbrt(2.0) * u * u / s + u;
        // one Newton polish, then accept if the cubic is satisfied
        double g = cubic_residual(K, u, A);
        double dg = (K - 2.0 * u) * (2.0 * (K + u) + (K - 2.0 * u));
        if (dg != 0.0) K -= g / dg;
        if (std::fabs(cubic_residual(K, u, A)) <= tol) return K;
      }
    }
  }
  auto roots = cubic_roots_scan(u, A);
  if (roots.empty())
    throw std::domain_error("real_root_K: no real root located");
  if (branch == RootBranch::Principal) return roots.back();
  if (roots.size() < 2)
    throw std::domain_error("real_root_K: no alternate real branch for this (u, A)");
  return roots.front();
}

std::string describe_reduction(const ProblemCase& pc) {
  ODEClass cls = classify_reduced(pc);
  std::string out;
  if (pc.pde_class == 1) {
    out += "u_t = (H(t) + K(u)) * exp(-B(t))\n";
    out += "  H'(t) = alpha(x(t),t) * exp(B(t)) along dx/dt = " + pc.one.a.str() + "\n";
    out += "  K'(u) = G(u) = " + pc.one.G.str() + "\n";
    out += "  B(t)  = integral of b(t) = " + pc.one.b.str() + "\n";
  } else {
    out += "u_t = K(u) * exp(-B(t))\n";
    if (pc.two.m == 0)
      out += "  K'(u) = F(u, K) = " + pc.two.F.str() + "  [s=u, w=K]\n";
    else
      out += "  K^" + std::to_string(pc.two.m) + " K'(u) = F(u, K) = " + pc.two.F.str() +
             "  [s=u, w=K]\n";
    out += "  B(t)  = integral of b(t) = " + pc.two.b.str() + "\n";
  }
  out += "  class: " + to_string(cls) + "\n";
  if (pc.id == "E8")
    out += "  first integral: (K - 2u)^2 * (K + u) = A\n";
  return out;
}

}  // namespace charred
