#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "charred/csvio.hpp"
#include "charred/plot.hpp"
#include "charred/problem.hpp"
#include "charred/reduce.hpp"
#include "charred/solve.hpp"
#include "charred/verify.hpp"

namespace py = pybind11;
using namespace charred;

namespace {

ProblemCase case_from(const std::string& example, const std::string& json_text) {
  if (example.empty() == json_text.empty())
    throw std::invalid_argument("pass exactly one of example= / json=");
  return example.empty() ? load_problem(json_text) : builtin_example(example);
}

IntegratorConfig config_from(double rtol, double atol, double umax) {
  IntegratorConfig cfg;
  if (rtol > 0) cfg.rel_tol = rtol;
  if (atol > 0) cfg.abs_tol = atol;
  if (umax > 0) cfg.u_max = umax;
  return cfg;
}

py::dict grid_to_dict(const SolutionGrid& grid) {
  py::dict d;
  d["problem"] = grid.problem_id;
  d["x"] = grid.xs;
  d["t"] = grid.ts;
  d["u"] = grid.u;  // row-major over t then x: u[j*nx + i]
  std::vector<std::string> st;
  st.reserve(grid.status.size());
  for (auto s : grid.status) st.emplace_back(to_token(s));
  d["status"] = st;
  d["blowup_t"] = grid.blowup_time;
  return d;
}

py::dict report_to_dict(const ResidualReport& r) {
  py::dict d;
  d["max_abs"] = r.max_abs;
  d["mean_abs"] = r.mean_abs;
  d["count_evaluated"] = r.count_evaluated;
  d["count_skipped"] = r.count_skipped;
  d["worst_x"] = r.worst_x;
  d["worst_t"] = r.worst_t;
  return d;
}

GridSpec grid_from(const ProblemCase& pc, py::object grid) {
  if (grid.is_none()) return pc.default_grid;
  py::dict g = grid.cast<py::dict>();
  GridSpec out = pc.default_grid;
  if (g.contains("x")) {
    auto v = g["x"].cast<std::vector<double>>();
    out.x_min = v.at(0);
    out.x_max = v.at(1);
  }
  if (g.contains("t")) {
    auto v = g["t"].cast<std::vector<double>>();
    out.t_min = v.at(0);
    out.t_max = v.at(1);
  }
  if (g.contains("nx")) out.nx = g["nx"].cast<int>();
  if (g.contains("nt")) out.nt = g["nt"].cast<int>();
  return out;
}

}  // namespace

PYBIND11_MODULE(_charred, m) {
  m.doc() = "characteristic-curve reduction solver for two classes of "
            "second-order nonlinear PDEs";

  m.def("list_examples", &builtin_ids, "Ids of the built-in example problems.");

  m.def(
      "describe_reduction",
      [](const std::string& example) {
        return describe_reduction(builtin_example(example));
      },
      py::arg("example"), "Text form of the reduced first-order ODE.");

  m.def(
      "classify",
      [](const std::string& example) {
        return to_string(classify_reduced(builtin_example(example)));
      },
      py::arg("example"));

  m.def(
      "solve",
      [](const std::string& example, const std::string& json, py::object grid,
         double rtol, double atol, double umax, int threads) {
        ProblemCase pc = case_from(example, json);
        GridSpec g = grid_from(pc, grid);
        return grid_to_dict(solve_on_grid(pc, g, config_from(rtol, atol, umax),
                                          threads));
      },
      py::arg("example") = "", py::arg("json") = "", py::arg("grid") = py::none(),
      py::arg("rtol") = -1.0, py::arg("atol") = -1.0, py::arg("umax") = -1.0,
      py::arg("threads") = 0,
      "Solve on a grid; returns x, t, u (row-major over t then x), status "
      "tokens, and per-column blow-up times.");

  m.def(
      "verify",
      [](const std::string& example, const std::string& json, py::object grid,
         double rtol, double atol, double umax) {
        ProblemCase pc = case_from(example, json);
        GridSpec g = grid_from(pc, grid);
        IntegratorConfig cfg = config_from(rtol, atol, umax);
        SolutionGrid sol = solve_on_grid(pc, g, cfg);
        py::dict d;
        d["fd_residual"] = report_to_dict(fd_residual(sol, pc, cfg));
        if (pc.oracle.kind == OracleSpec::Kind::Explicit)
          d["oracle"] = report_to_dict(oracle_compare(sol, pc));
        else if (pc.oracle.kind == OracleSpec::Kind::Implicit)
          d["implicit"] = report_to_dict(implicit_residual(sol, pc));
        return d;
      },
      py::arg("example") = "", py::arg("json") = "", py::arg("grid") = py::none(),
      py::arg("rtol") = -1.0, py::arg("atol") = -1.0, py::arg("umax") = -1.0);

  m.def(
      "estimate_blowup_time",
      [](const std::string& example, double x, double t_max, double rtol,
         double atol, double umax) -> py::object {
        auto t = charred::estimate_blowup_time(builtin_example(example), x, t_max,
                                               config_from(rtol, atol, umax));
        if (!t) return py::none();
        return py::float_(*t);
      },
      py::arg("example"), py::arg("x"), py::arg("t_max"), py::arg("rtol") = -1.0,
      py::arg("atol") = -1.0, py::arg("umax") = -1.0);

  m.def(
      "real_root_k",
      [](double u, double A, const std::string& branch) {
        if (branch == "principal") return real_root_K(u, A, RootBranch::Principal);
        if (branch == "alternate") return real_root_K(u, A, RootBranch::Alternate);
        throw std::invalid_argument("branch must be 'principal' or 'alternate'");
      },
      py::arg("u"), py::arg("A"), py::arg("branch") = "principal",
      "Real root K of (K - 2u)^2 (K + u) = A.");

  m.def(
      "eval_expr",
      [](const std::string& text, py::dict vars) {
        Bindings b;
        for (auto item : vars) {
          auto v = var_from_name(item.first.cast<std::string>());
          if (!v) throw std::invalid_argument("unknown variable");
          b.set(*v, item.second.cast<double>());
        }
        return Expression::parse(text).evaluate(b);
      },
      py::arg("text"), py::arg("vars"));

  m.def(
      "diff_expr",
      [](const std::string& text, const std::string& var) {
        auto v = var_from_name(var);
        if (!v) throw std::invalid_argument("unknown variable");
        return Expression::parse(text).differentiate(*v).str();
      },
      py::arg("text"), py::arg("var"));

  m.def(
      "render_svg",
      [](const std::string& example, py::object grid, const std::string& kind,
         double slice_t) {
        ProblemCase pc = builtin_example(example);
        SolutionGrid sol =
            solve_on_grid(pc, grid_from(pc, grid), IntegratorConfig{});
        if (kind == "surface") return svg_heatmap(sol);
        if (kind == "contour") return svg_contour(sol);
        if (kind == "slice") return svg_slice(sol, slice_t);
        throw std::invalid_argument("kind must be surface/contour/slice");
      },
      py::arg("example"), py::arg("grid") = py::none(),
      py::arg("kind") = "surface", py::arg("slice_t") = 0.0);

  py::register_exception<ExprError>(m, "ExpressionError");
  py::register_exception<ProblemError>(m, "ProblemError");
  py::register_exception<VerifyError>(m, "VerifyError");
}
