#include <cmath>

#include "charred/problem.hpp"
#include "charred/solve.hpp"
#include "charred/verify.hpp"
#include "doctest.h"

using namespace charred;

TEST_CASE("pointwise residual vanishes on a manufactured solution") {
  // class I transport: u = t solves u_tt + a u_xt + b u_t = alpha + ...
  ProblemCase pc = load_problem(R"({
    "id": "p", "class": 1, "a": "1", "b": "0", "alpha": "0", "G": "0",
    "t0": 0, "u0": "0", "ut0": "1",
    "grid": {"x": [-1, 1, 5], "t": [0, 1, 5]}
  })");
  CHECK(pde_residual(pc, 0.3, 0.4, /*u=*/0.4, /*ut=*/1.0, /*ux=*/0.0,
                     /*utt=*/0.0, /*uxt=*/0.0, /*B=*/0.0) == 0.0);
  // and is nonzero for wrong derivatives
  CHECK(pde_residual(pc, 0.3, 0.4, 0.4, 1.0, 0.0, 1.0, 0.0, 0.0) == 1.0);
}

TEST_CASE("class II residual uses w = u_t e^B") {
  // E7: u_tt + u_xt + (2/t) u_t = e^{-3B} (u_t + u_x) F(u, u_t e^B), B = 2 ln t
  ProblemCase pc = builtin_example("E7");
  double t = 2.0, B = 2 * std::log(t);
  double ut = 0.25, ux = -0.1, u = 0.2;
  double w = ut * std::exp(B);
  double F = w + w * w * w;
  double expect = (0.0 + 1.0 * 0.0 + (2.0 / t) * ut) -
                  std::exp(-B) * (ut + ux) * F;
  CHECK(pde_residual(pc, 0.1, t, u, ut, ux, 0.0, 0.0, B) ==
        doctest::Approx(expect).epsilon(1e-13));
}

TEST_CASE("fd residual is tiny for the transport solution") {
  ProblemCase pc = load_problem(R"({
    "id": "p", "class": 1, "a": "1", "b": "0", "alpha": "0", "G": "0",
    "t0": 0, "u0": "0", "ut0": "1",
    "grid": {"x": [-1, 1, 21], "t": [0, 1, 21]}
  })");
  SolutionGrid grid = solve_on_grid(pc, pc.default_grid, IntegratorConfig{}, 1);
  ResidualReport rep = fd_residual(grid, pc);
  CHECK(rep.count_skipped == 0);
  CHECK(rep.max_abs <= 1e-10);
}

TEST_CASE("fd residual shrinks like h^2 on E5") {
  ProblemCase pc = builtin_example("E5");
  IntegratorConfig cfg;
  cfg.rel_tol = 1e-12;
  cfg.abs_tol = 1e-13;
  auto max_res = [&](int n) {
    GridSpec g{-0.5, 0.5, 0.0, 0.5, n, n};
    SolutionGrid grid = solve_on_grid(pc, g, cfg);
    return fd_residual(grid, pc, cfg).max_abs;
  };
  double coarse = max_res(51);
  double fine = max_res(101);
  double ratio = coarse / fine;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("oracle comparison on E2") {
  ProblemCase pc = builtin_example("E2");
  GridSpec g{-1.0, 1.0, 0.0, 0.5, 41, 41};
  SolutionGrid grid = solve_on_grid(pc, g, IntegratorConfig{});
  ResidualReport rep = oracle_compare(grid, pc);
  CHECK(rep.count_evaluated == grid.u.size());
  CHECK(rep.max_abs < 1e-6);
  CHECK(rep.mean_abs <= rep.max_abs);
  CHECK_THROWS_AS(implicit_residual(grid, pc), VerifyError);  // wrong kind
}

TEST_CASE("implicit relation on E7") {
  ProblemCase pc = builtin_example("E7");
  GridSpec g{-1.0, 0.3, 1.0, 2.0, 41, 41};
  SolutionGrid grid = solve_on_grid(pc, g, IntegratorConfig{});
  ResidualReport rep = implicit_residual(grid, pc);
  CHECK(rep.count_evaluated > 0);
  CHECK(rep.max_abs < 1e-5);
  CHECK_THROWS_AS(oracle_compare(grid, pc), VerifyError);  // wrong kind
}

TEST_CASE("residual-only examples have no oracle hooks") {
  for (const char* id : {"E4", "E5", "E6", "E8"})
    CHECK(builtin_example(id).oracle.kind == OracleSpec::Kind::None);
}

TEST_CASE("grids without enough interior points are rejected") {
  ProblemCase pc = builtin_example("E2");
  GridSpec g{-1.0, 1.0, 0.0, 0.5, 3, 2};
  SolutionGrid grid = solve_on_grid(pc, g, IntegratorConfig{}, 1);
  CHECK_THROWS_AS(fd_residual(grid, pc), VerifyError);
}
