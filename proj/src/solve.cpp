#include "charred/solve.hpp"

#include "charred/characteristics.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

namespace charred {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Step underflow with a huge derivative is a derivative-type singularity
// (log blow-ups never cross u_max in double precision); report it as blow-up.
bool underflow_is_blowup(const Trajectory& traj) {
  double f = 0.0, y = 0.0;
  for (double v : traj.f_end) f = std::max(f, std::fabs(v));
  for (double v : traj.y_end) y = std::max(y, std::fabs(v));
  return f > 1e6 * (1.0 + y);
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  if (const char* env = std::getenv("CHARRED_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

struct ColumnResult {
  // per t index: value + status
  std::vector<double> u;
  std::vector<PointStatus> status;
  double blowup_t = kNaN;
};

ColumnResult solve_one_column(const ReducedSystem& rs, double x,
                              const std::vector<double>& ts) {
  const ProblemCase& pc = rs.problem();
  const double t0 = pc.initial.t0;
  const std::size_t nt = ts.size();
  ColumnResult res;
  res.u.assign(nt, kNaN);
  res.status.assign(nt, PointStatus::Failed);

  double u0;
  try {
    u0 = rs.initial_u(x);
    rs.initial_ut(x);  // probe: initial slope must be real here
  } catch (const ExprError&) {
    std::fill(res.status.begin(), res.status.end(), PointStatus::OutOfDomain);
    return res;
  }
  if (!std::isfinite(u0)) {
    std::fill(res.status.begin(), res.status.end(), PointStatus::OutOfDomain);
    return res;
  }

  auto fill_from = [&](const Trajectory& traj, auto&& covered_indices) {
    bool blown = traj.status == Termination::Blowup ||
                 (traj.status == Termination::StepUnderflow && underflow_is_blowup(traj));
    if (blown && traj.t_end > t0 && std::isnan(res.blowup_t)) res.blowup_t = traj.t_end;
    for (std::size_t j : covered_indices) {
      double t = ts[j];
      if (traj.covers(t)) {
        double v = traj.sample(t)[0];
        if (std::isfinite(v) && std::fabs(v) <= rs.config().u_max) {
          res.u[j] = v;
          res.status[j] = PointStatus::Ok;
          continue;
        }
      }
      res.status[j] = blown ? PointStatus::Blowup : PointStatus::Failed;
    }
  };

  // forward and backward sweeps from t0
  std::vector<std::size_t> fwd, bwd;
  double t_fwd = t0, t_bwd = t0;
  for (std::size_t j = 0; j < nt; ++j) {
    if (ts[j] == t0) {
      res.u[j] = u0;
      res.status[j] = PointStatus::Ok;
    } else if (ts[j] > t0) {
      fwd.push_back(j);
      t_fwd = std::max(t_fwd, ts[j]);
    } else {
      bwd.push_back(j);
      t_bwd = std::min(t_bwd, ts[j]);
    }
  }
  if (!fwd.empty()) fill_from(solve_column(rs, x, t_fwd), fwd);
  if (!bwd.empty()) fill_from(solve_column(rs, x, t_bwd), bwd);
  return res;
}

}  // namespace

const char* to_token(PointStatus s) {
  switch (s) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Blowup: return "blowup";
    case PointStatus::OutOfDomain: return "out_of_domain";
    case PointStatus::Failed: return "failed";
  }
  return "?";
}

std::optional<PointStatus> status_from_token(const std::string& tok) {
  if (tok == "ok") return PointStatus::Ok;
  if (tok == "blowup") return PointStatus::Blowup;
  if (tok == "out_of_domain") return PointStatus::OutOfDomain;
  if (tok == "failed") return PointStatus::Failed;
  return std::nullopt;
}

Trajectory solve_column(const ReducedSystem& rs, double x, double t_target) {
  const double t0 = rs.problem().initial.t0;
  double u0 = rs.initial_u(x);
  OdeRhs rhs = [&rs, x](double t, std::span<const double> y, std::span<double> d) {
    d[0] = rs.rhs(x, t, y[0]);
  };
  double y0[1] = {u0};
  Watch watch{{{0, rs.config().u_max}}};
  return integrate_adaptive(rhs, y0, t0, t_target, rs.config(), watch);
}

SolutionGrid solve_on_grid(const ProblemCase& pc, const GridSpec& grid,
                           const IntegratorConfig& cfg, int threads) {
  if (!(grid.x_min < grid.x_max) || !(grid.t_min < grid.t_max) || grid.nx < 2 ||
      grid.nt < 2)
    throw ProblemError("invalid grid specification");

  SolutionGrid out;
  out.problem_id = pc.id;
  out.config = cfg;
  out.xs.resize(grid.nx);
  out.ts.resize(grid.nt);
  for (int i = 0; i < grid.nx; ++i)
    out.xs[i] = grid.x_min + (grid.x_max - grid.x_min) * i / (grid.nx - 1);
  for (int j = 0; j < grid.nt; ++j)
    out.ts[j] = grid.t_min + (grid.t_max - grid.t_min) * j / (grid.nt - 1);
  // keep t0 exact on the axis when it lands on a grid line
  for (int j = 0; j < grid.nt; ++j)
    if (std::fabs(out.ts[j] - pc.initial.t0) < 1e-12 * (grid.t_max - grid.t_min))
      out.ts[j] = pc.initial.t0;

  out.u.assign(out.nx() * out.nt(), kNaN);
  out.status.assign(out.nx() * out.nt(), PointStatus::Failed);
  out.blowup_time.assign(out.nx(), kNaN);

  ReducedSystem rs(pc, cfg, std::min(grid.t_min, pc.initial.t0),
                   std::max(grid.t_max, pc.initial.t0));

  const int nworkers = std::min(resolve_threads(threads), grid.nx);
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (;;) {
      int i = next.fetch_add(1);
      if (i >= grid.nx) return;
      ColumnResult col = solve_one_column(rs, out.xs[i], out.ts);
      for (std::size_t j = 0; j < out.nt(); ++j) {
        out.u[out.index(i, j)] = col.u[j];
        out.status[out.index(i, j)] = col.status[j];
      }
      out.blowup_time[i] = col.blowup_t;
    }
  };
  if (nworkers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

CharacteristicSamples solve_along_characteristic(const ProblemCase& pc, double x0,
                                                 double t1, const IntegratorConfig& cfg,
                                                 int samples) {
  const double t0 = pc.initial.t0;
  if (!(t1 > t0)) throw ProblemError("t1 must exceed t0");
  const Expression& a = pc.pde_class == 1 ? pc.one.a : pc.two.a;
  CharacteristicCurve curve = trace_forward(a, x0, t0, t1, cfg);
  ReducedSystem rs(pc, cfg, t0, t1);

  CharacteristicSamples out;
  out.x0 = x0;
  for (int i = 0; i < samples; ++i) {
    double t = t0 + (t1 - t0) * i / (samples - 1);
    double x = curve.x_at(t);
    double u;
    if (t == t0) {
      u = rs.initial_u(x0);
    } else {
      Trajectory traj = solve_column(rs, x, t);
      if (traj.status != Termination::Completed) break;
      u = traj.y_end[0];
    }
    out.t.push_back(t);
    out.x.push_back(x);
    out.u.push_back(u);
    out.k.push_back(rs.k_on_characteristic(x0, u));
  }
  return out;
}

std::optional<double> estimate_blowup_time(const ProblemCase& pc, double x_column,
                                           double t_max, const IntegratorConfig& cfg) {
  ReducedSystem rs(pc, cfg, pc.initial.t0, t_max);
  Trajectory traj = solve_column(rs, x_column, t_max);
  if (traj.status == Termination::Blowup) return traj.t_end;
  if (traj.status == Termination::StepUnderflow && underflow_is_blowup(traj))
    return traj.t_end;
  return std::nullopt;
}

}  // namespace charred
