#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "charred/expr.hpp"

namespace charred {

struct ProblemError : std::runtime_error {
  explicit ProblemError(const std::string& msg) : std::runtime_error(msg) {}
};

// u_tt + a(x,t) u_xt + b(t) u_t = alpha(x,t) + G(u) (u_t + a u_x) e^{-B}
struct ClassOneSpec {
  Expression a, b, alpha, G;
};

// u_t^m (u_tt + a u_xt) + b(t) u_t^{m+1} = e^{-(m+1)B} (u_t + a u_x) F(u, u_t e^B)
struct ClassTwoSpec {
  Expression a, b, F;
  int m = 0;
};

struct InitialData {
  double t0 = 0.0;
  Expression u0, ut0;  // functions of x
};

struct GridSpec {
  double x_min, x_max;
  double t_min, t_max;
  int nx, nt;
};

// Verification reference attached to a problem. Explicit: u(x,t) formula.
// Implicit: relation g(x,t,u) expected to vanish on the solution.
struct OracleSpec {
  enum class Kind { Explicit, Implicit, None };
  Kind kind = Kind::None;
  Expression expr;  // u(x,t) or relation(x,t,u)
  // Real-domain / conditioning predicate; points outside are skipped.
  std::function<bool(double x, double t, double u)> valid;
};

struct ProblemCase {
  std::string id;
  int pde_class = 1;  // 1 or 2
  ClassOneSpec one;
  ClassTwoSpec two;
  InitialData initial;
  GridSpec default_grid;
  OracleSpec oracle;
  std::string note;
};

// Parses and validates a JSON problem document (schema in docs/cli).
ProblemCase load_problem(const std::string& json_text);

// The built-in registry E1..E8.
ProblemCase builtin_example(const std::string& id);
std::vector<std::string> builtin_ids();

// Field-level variable restrictions shared by the loaders.
void check_variables(const Expression& e, std::initializer_list<Var> allowed,
                     const std::string& field);

}  // namespace charred
