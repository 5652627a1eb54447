#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "charred/csvio.hpp"
#include "charred/plot.hpp"
#include "charred/problem.hpp"
#include "charred/reduce.hpp"
#include "charred/solve.hpp"
#include "charred/verify.hpp"

using nlohmann::json;
using namespace charred;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitEmpty = 2;
constexpr int kExitIo = 3;
constexpr int kExitThreshold = 4;

struct CommonOpts {
  std::string example, spec_path;
  std::string grid_str, x_str, t_str;
  double rtol = -1, atol = -1, umax = -1;
  int threads = 0;
};

void add_common(CLI::App* app, CommonOpts& o) {
  app->add_option("--example", o.example, "built-in example id (E1..E8)");
  app->add_option("--spec", o.spec_path, "JSON problem description file");
  app->add_option("--grid", o.grid_str, "grid size NXxNT, e.g. 101x101");
  app->add_option("--x", o.x_str, "x range min:max");
  app->add_option("--t", o.t_str, "t range min:max");
  app->add_option("--rtol", o.rtol, "relative tolerance");
  app->add_option("--atol", o.atol, "absolute tolerance");
  app->add_option("--umax", o.umax, "blow-up threshold on |u|");
  app->add_option("--threads", o.threads, "worker thread count (0 = auto)");
}

ProblemCase load_case(const CommonOpts& o) {
  if (o.example.empty() == o.spec_path.empty())
    throw CLI::ValidationError("exactly one of --example / --spec is required");
  if (!o.example.empty()) return builtin_example(o.example);
  std::ifstream f(o.spec_path);
  if (!f) throw CsvError("cannot open '" + o.spec_path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return load_problem(ss.str());
}

GridSpec resolve_grid(const ProblemCase& pc, const CommonOpts& o) {
  GridSpec g = pc.default_grid;
  if (!o.grid_str.empty()) {
    int nx, nt;
    char sep;
    std::istringstream is(o.grid_str);
    if (!(is >> nx >> sep >> nt) || (sep != 'x' && sep != 'X') || nx < 2 || nt < 2)
      throw ProblemError("bad --grid '" + o.grid_str + "', want NXxNT");
    g.nx = nx;
    g.nt = nt;
  }
  auto parse_range = [](const std::string& s, double& lo, double& hi) {
    auto colon = s.find(':');
    if (colon == std::string::npos)
      throw ProblemError("bad range '" + s + "', want min:max");
    try {
      lo = std::stod(s.substr(0, colon));
      hi = std::stod(s.substr(colon + 1));
    } catch (const std::exception&) {
      throw ProblemError("bad range '" + s + "'");
    }
    if (!(lo < hi)) throw ProblemError("bad range '" + s + "': min must be < max");
  };
  if (!o.x_str.empty()) parse_range(o.x_str, g.x_min, g.x_max);
  if (!o.t_str.empty()) parse_range(o.t_str, g.t_min, g.t_max);
  return g;
}

IntegratorConfig resolve_cfg(const CommonOpts& o) {
  IntegratorConfig cfg;
  if (o.rtol > 0) cfg.rel_tol = o.rtol;
  if (o.atol > 0) cfg.abs_tol = o.atol;
  if (o.umax > 0) cfg.u_max = o.umax;
  return cfg;
}

json report_to_json(const ResidualReport& r) {
  return json{{"max_abs", r.max_abs},
              {"mean_abs", r.mean_abs},
              {"count_evaluated", r.count_evaluated},
              {"count_skipped", r.count_skipped},
              {"worst_x", r.worst_x},
              {"worst_t", r.worst_t}};
}

int cmd_solve(const CommonOpts& o, const std::string& plot_kind, double slice_t,
              const std::string& out_base) {
  ProblemCase pc = load_case(o);
  GridSpec g = resolve_grid(pc, o);
  SolutionGrid grid = solve_on_grid(pc, g, resolve_cfg(o), o.threads);

  std::size_t ok = 0;
  for (auto s : grid.status)
    if (s == PointStatus::Ok) ++ok;
  if (ok == 0) {
    std::cerr << "solve produced zero ok points\n";
    return kExitEmpty;
  }

  std::string base = out_base.empty() ? pc.id : out_base;
  write_csv_file(base + ".csv", grid);
  std::cout << base << ".csv: " << grid.nx() << "x" << grid.nt() << " grid, " << ok
            << "/" << grid.u.size() << " ok points\n";

  if (!plot_kind.empty()) {
    std::string svg;
    if (plot_kind == "surface")
      svg = svg_heatmap(grid);
    else if (plot_kind == "contour")
      svg = svg_contour(grid);
    else if (plot_kind == "slice")
      svg = svg_slice(grid, slice_t);
    else
      throw ProblemError("unknown plot kind '" + plot_kind + "'");
    std::ofstream f(base + ".svg");
    if (!f || !(f << svg)) throw CsvError("cannot write '" + base + ".svg'");
    std::cout << base << ".svg: " << plot_kind << " plot\n";
  }
  return kExitOk;
}

int cmd_verify(const CommonOpts& o, double tol_res, double tol_oracle,
               const std::string& out_path) {
  ProblemCase pc = load_case(o);
  GridSpec g = resolve_grid(pc, o);
  IntegratorConfig cfg = resolve_cfg(o);
  SolutionGrid grid = solve_on_grid(pc, g, cfg, o.threads);

  std::size_t ok = 0;
  for (auto s : grid.status)
    if (s == PointStatus::Ok) ++ok;
  if (ok == 0) {
    std::cerr << "solve produced zero ok points\n";
    return kExitEmpty;
  }

  json rep;
  rep["problem"] = pc.id;
  bool pass = true;

  ResidualReport fd = fd_residual(grid, pc, cfg);
  rep["fd_residual"] = report_to_json(fd);
  rep["fd_residual"]["tolerance"] = tol_res;
  bool fd_pass = fd.max_abs <= tol_res;
  rep["fd_residual"]["pass"] = fd_pass;
  pass = pass && fd_pass;

  if (pc.oracle.kind == OracleSpec::Kind::Explicit) {
    ResidualReport oc = oracle_compare(grid, pc);
    rep["oracle"] = report_to_json(oc);
    rep["oracle"]["tolerance"] = tol_oracle;
    bool oc_pass = oc.max_abs <= tol_oracle;
    rep["oracle"]["pass"] = oc_pass;
    pass = pass && oc_pass;
  } else if (pc.oracle.kind == OracleSpec::Kind::Implicit) {
    ResidualReport ir = implicit_residual(grid, pc);
    rep["implicit"] = report_to_json(ir);
    rep["implicit"]["tolerance"] = tol_oracle;
    bool ir_pass = ir.max_abs <= tol_oracle;
    rep["implicit"]["pass"] = ir_pass;
    pass = pass && ir_pass;
  } else {
    rep["oracle"] = "skipped (none)";
  }
  rep["pass"] = pass;

  std::string text = rep.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out_path);
    if (!f || !(f << text)) throw CsvError("cannot write '" + out_path + "'");
  }
  return pass ? kExitOk : kExitThreshold;
}

int cmd_reduce(const CommonOpts& o, bool as_json) {
  ProblemCase pc = load_case(o);
  if (as_json) {
    ODEClass cls = classify_reduced(pc);
    json j;
    j["problem"] = pc.id;
    j["pde_class"] = pc.pde_class;
    j["class"] = to_string(cls);
    j["description"] = describe_reduction(pc);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << pc.id << ":\n" << describe_reduction(pc);
  }
  return kExitOk;
}

int cmd_list(const std::string& filter) {
  std::printf("%-4s %-5s %-12s %-12s %-28s %-8s\n", "id", "class", "a", "b",
              "nonlinearity", "oracle");
  int shown = 0;
  for (const std::string& id : builtin_ids()) {
    if (!filter.empty() && id.find(filter) == std::string::npos) continue;
    ProblemCase pc = builtin_example(id);
    std::string nl = pc.pde_class == 1 ? "G = " + pc.one.G.str()
                                       : "F = " + pc.two.F.str();
    const char* okind = pc.oracle.kind == OracleSpec::Kind::Explicit ? "explicit"
                        : pc.oracle.kind == OracleSpec::Kind::Implicit ? "implicit"
                                                                       : "none";
    const Expression& a = pc.pde_class == 1 ? pc.one.a : pc.two.a;
    const Expression& b = pc.pde_class == 1 ? pc.one.b : pc.two.b;
    std::printf("%-4s %-5d %-12s %-12s %-28s %-8s\n", pc.id.c_str(), pc.pde_class,
                a.str().c_str(), b.str().c_str(), nl.c_str(), okind);
    ++shown;
  }
  if (shown == 0) {
    std::cerr << "no example matches filter '" << filter << "'\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"characteristic-curve reduction solver for two classes of "
               "second-order nonlinear PDEs"};
  app.require_subcommand(1);

  CommonOpts so, vo, ro;
  std::string plot_kind, out_base, verify_out, list_filter;
  double slice_t = 0.0;
  double tol_res = 1e-3, tol_oracle = 1e-6;
  bool reduce_json = false;

  CLI::App* solve = app.add_subcommand("solve", "solve on a grid, write CSV/SVG");
  add_common(solve, so);
  solve->add_option("--plot", plot_kind, "surface | contour | slice")
      ->check(CLI::IsMember({"surface", "contour", "slice"}));
  solve->add_option("--slice-t", slice_t, "t value for --plot slice");
  solve->add_option("--out", out_base, "output basename (default: problem id)");

  CLI::App* verify = app.add_subcommand("verify", "solve + residual/oracle checks");
  add_common(verify, vo);
  verify->add_option("--tol-res", tol_res, "max FD residual allowed");
  verify->add_option("--tol-oracle", tol_oracle, "max oracle deviation allowed");
  verify->add_option("--out", verify_out, "write JSON report here (default stdout)");

  CLI::App* reduce = app.add_subcommand("reduce", "print the reduced ODE");
  add_common(reduce, ro);
  reduce->add_flag("--json", reduce_json, "emit JSON instead of text");

  CLI::App* list = app.add_subcommand("list-examples", "print the built-in registry");
  list->add_option("--filter", list_filter, "only ids containing this substring");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(so, plot_kind, slice_t, out_base);
    if (verify->parsed()) return cmd_verify(vo, tol_res, tol_oracle, verify_out);
    if (reduce->parsed()) return cmd_reduce(ro, reduce_json);
    return cmd_list(list_filter);
  } catch (const CsvError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const PlotError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}
