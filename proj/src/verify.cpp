#include "charred/verify.hpp"

#include <cmath>

#include "charred/reduce.hpp"

namespace charred {

namespace {

struct Accumulator {
  ResidualReport rep;
  double sum = 0.0;

  void add(double value, double x, double t) {
    double a = std::fabs(value);
    sum += a;
    if (rep.count_evaluated == 0 || a > rep.max_abs) {
      rep.max_abs = a;
      rep.worst_x = x;
      rep.worst_t = t;
    }
    ++rep.count_evaluated;
  }
  void skip() { ++rep.count_skipped; }
  ResidualReport finish() {
    if (rep.count_evaluated > 0) rep.mean_abs = sum / rep.count_evaluated;
    return rep;
  }
};

}  // namespace

double pde_residual(const ProblemCase& pc, double x, double t, double u, double ut,
                    double ux, double utt, double uxt, double B) {
  Bindings xt;
  xt.set(Var::X, x).set(Var::T, t);
  Bindings bt;
  bt.set(Var::T, t);
  if (pc.pde_class == 1) {
    double a = pc.one.a.evaluate(xt);
    double b = pc.one.b.evaluate(bt);
    double alpha = pc.one.alpha.evaluate(xt);
    double G = pc.one.G.evaluate(Bindings().set(Var::U, u));
    return utt + a * uxt + b * ut - alpha - G * (ut + a * ux) * std::exp(-B);
  }
  double a = pc.two.a.evaluate(xt);
  double b = pc.two.b.evaluate(bt);
  int m = pc.two.m;
  double F = pc.two.F.evaluate(Bindings().set(Var::S, u).set(Var::W, ut * std::exp(B)));
  double utm = std::pow(ut, m);
  return utm * (utt + a * uxt) + b * utm * ut -
         std::exp(-(m + 1) * B) * (ut + a * ux) * F;
}

ResidualReport fd_residual(const SolutionGrid& grid, const ProblemCase& pc,
                           const IntegratorConfig& cfg) {
  const std::size_t nx = grid.nx(), nt = grid.nt();
  if (nx < 3 || nt < 3) throw VerifyError("grid too small for interior stencils");
  const double dx = grid.xs[1] - grid.xs[0];
  const double dt = grid.ts[1] - grid.ts[0];

  ReducedSystem rs(pc, cfg, grid.ts.front(), grid.ts.back());

  Accumulator acc;
  for (std::size_t j = 1; j + 1 < nt; ++j) {
    double B = rs.damping(grid.ts[j]);
    for (std::size_t i = 1; i + 1 < nx; ++i) {
      bool usable = true;
      for (int dj = -1; dj <= 1 && usable; ++dj)
        for (int di = -1; di <= 1 && usable; ++di)
          usable = grid.state(i + di, j + dj) == PointStatus::Ok;
      if (!usable) {
        acc.skip();
        continue;
      }
      auto U = [&](int di, int dj) { return grid.value(i + di, j + dj); };
      double ut = (U(0, 1) - U(0, -1)) / (2 * dt);
      double ux = (U(1, 0) - U(-1, 0)) / (2 * dx);
      double utt = (U(0, 1) - 2 * U(0, 0) + U(0, -1)) / (dt * dt);
      double uxt = (U(1, 1) - U(1, -1) - U(-1, 1) + U(-1, -1)) / (4 * dx * dt);
      try {
        acc.add(pde_residual(pc, grid.xs[i], grid.ts[j], U(0, 0), ut, ux, utt, uxt, B),
                grid.xs[i], grid.ts[j]);
      } catch (const ExprError&) {
        acc.skip();
      }
    }
  }
  if (acc.rep.count_evaluated < 9)
    throw VerifyError("fewer than 9 evaluable interior points");
  return acc.finish();
}

ResidualReport oracle_compare(const SolutionGrid& grid, const ProblemCase& pc) {
  if (pc.oracle.kind != OracleSpec::Kind::Explicit)
    throw VerifyError("problem has no explicit oracle");
  Accumulator acc;
  for (std::size_t j = 0; j < grid.nt(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      if (grid.state(i, j) != PointStatus::Ok) {
        acc.skip();
        continue;
      }
      double x = grid.xs[i], t = grid.ts[j];
      if (pc.oracle.valid && !pc.oracle.valid(x, t, grid.value(i, j))) {
        acc.skip();
        continue;
      }
      try {
        double ref = pc.oracle.expr.evaluate(Bindings().set(Var::X, x).set(Var::T, t));
        acc.add(grid.value(i, j) - ref, x, t);
      } catch (const ExprError&) {
        acc.skip();
      }
    }
  }
  if (acc.rep.count_evaluated == 0) throw VerifyError("no comparable points");
  return acc.finish();
}

ResidualReport implicit_residual(const SolutionGrid& grid, const ProblemCase& pc) {
  if (pc.oracle.kind != OracleSpec::Kind::Implicit)
    throw VerifyError("problem has no implicit oracle");
  Accumulator acc;
  for (std::size_t j = 0; j < grid.nt(); ++j) {
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      if (grid.state(i, j) != PointStatus::Ok) {
        acc.skip();
        continue;
      }
      double x = grid.xs[i], t = grid.ts[j];
      double u = grid.value(i, j);
      if (pc.oracle.valid && !pc.oracle.valid(x, t, u)) {
        acc.skip();
        continue;
      }
      try {
        double rel = pc.oracle.expr.evaluate(
            Bindings().set(Var::X, x).set(Var::T, t).set(Var::U, u));
        acc.add(rel, x, t);
      } catch (const ExprError&) {
        acc.skip();
      }
    }
  }
  if (acc.rep.count_evaluated == 0) throw VerifyError("no comparable points");
  return acc.finish();
}

}  // namespace charred
