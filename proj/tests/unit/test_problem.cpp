#include <cmath>

#include "charred/problem.hpp"
#include "doctest.h"

using namespace charred;

TEST_CASE("registry lists eight examples") {
  auto ids = builtin_ids();
  REQUIRE(ids.size() == 8);
  for (const auto& id : ids) {
    ProblemCase pc = builtin_example(id);
    CHECK(pc.id == id);
    CHECK((pc.pde_class == 1 || pc.pde_class == 2));
    CHECK(!pc.initial.u0.empty());
    CHECK(!pc.initial.ut0.empty());
    CHECK(pc.default_grid.nx >= 2);
    CHECK(pc.default_grid.t_min <= pc.initial.t0);
  }
  CHECK(builtin_example("E1").pde_class == 1);
  for (const char* id : {"E2", "E3", "E4", "E5", "E6", "E7", "E8"})
    CHECK(builtin_example(id).pde_class == 2);
  CHECK_THROWS_AS(builtin_example("E9"), ProblemError);
  CHECK_THROWS_AS(builtin_example(""), ProblemError);
}

TEST_CASE("explicit oracles satisfy their own initial data") {
  for (const char* id : {"E1", "E2", "E3"}) {
    ProblemCase pc = builtin_example(id);
    REQUIRE(pc.oracle.kind == OracleSpec::Kind::Explicit);
    Expression dt = pc.oracle.expr.differentiate(Var::T);
    for (int i = 0; i < 50; ++i) {
      double x = 0.11 + (0.99 - 0.11) * i / 49.0;  // inside every validity domain
      Bindings at0 = Bindings().set(Var::X, x).set(Var::T, pc.initial.t0);
      Bindings bx = Bindings().set(Var::X, x);
      CHECK(std::fabs(pc.oracle.expr.evaluate(at0) - pc.initial.u0.evaluate(bx)) <
            1e-9);
      CHECK(std::fabs(dt.evaluate(at0) - pc.initial.ut0.evaluate(bx)) < 1e-8);
    }
  }
}

TEST_CASE("implicit oracle vanishes on the initial slice") {
  ProblemCase pc = builtin_example("E7");
  REQUIRE(pc.oracle.kind == OracleSpec::Kind::Implicit);
  for (int i = 0; i < 20; ++i) {
    double x = -1.0 + 1.2 * i / 19.0;
    double u = pc.initial.u0.evaluate(Bindings().set(Var::X, x));
    REQUIRE(pc.oracle.valid(x, pc.initial.t0, u));
    double rel = pc.oracle.expr.evaluate(
        Bindings().set(Var::X, x).set(Var::T, pc.initial.t0).set(Var::U, u));
    CHECK(std::fabs(rel) < 1e-12);
  }
}

TEST_CASE("JSON loading, class 1") {
  ProblemCase pc = load_problem(R"json({
    "id": "demo", "class": 1,
    "a": "x", "b": "1", "alpha": "x*exp(-t)", "G": "2*u",
    "t0": 0, "u0": "1", "ut0": "x+1",
    "grid": {"x": [0.1, 2, 51], "t": [0, 1, 41]}
  })json");
  CHECK(pc.id == "demo");
  CHECK(pc.pde_class == 1);
  CHECK(pc.one.G.evaluate(Bindings().set(Var::U, 3.0)) == 6.0);
  CHECK(pc.default_grid.nx == 51);
  CHECK(pc.default_grid.t_max == 1.0);
}

TEST_CASE("JSON loading, class 2 with m") {
  ProblemCase pc = load_problem(R"({
    "id": "demo2", "class": 2,
    "a": "1", "b": "0", "F": "w^2", "m": 1,
    "t0": 0, "u0": "0", "ut0": "x",
    "grid": {"x": [-1, 1, 11], "t": [0, 1, 11]}
  })");
  CHECK(pc.pde_class == 2);
  CHECK(pc.two.m == 1);
}

TEST_CASE("JSON loading errors point at the offending field") {
  auto expect = [](const std::string& doc, const std::string& fragment) {
    try {
      load_problem(doc);
      FAIL("no error for ", doc);
    } catch (const ProblemError& e) {
      CHECK(std::string(e.what()).find(fragment) != std::string::npos);
    }
  };
  expect("not json", "invalid JSON");
  expect(R"({"id":"p","class":3})", "/class");
  expect(R"({"id":"p","class":2,"a":"1","b":"0","F":"w","t0":0,"u0":"0",
            "ut0":"x"})",
         "/grid");
  // b may not depend on x
  expect(R"({"id":"p","class":2,"a":"1","b":"x","F":"w","t0":0,"u0":"0",
            "ut0":"x","grid":{"x":[0,1,3],"t":[0,1,3]}})",
         "/b");
  // F is a function of s,w only
  expect(R"({"id":"p","class":2,"a":"1","b":"0","F":"u","t0":0,"u0":"0",
            "ut0":"x","grid":{"x":[0,1,3],"t":[0,1,3]}})",
         "/F");
  expect(R"({"id":"p","class":2,"a":"1","b":"0","F":"w","m":-1,"t0":0,"u0":"0",
            "ut0":"x","grid":{"x":[0,1,3],"t":[0,1,3]}})",
         "/m");
  expect(R"({"id":"p","class":2,"a":"1","b":"0","F":"w","t0":0,"u0":"0",
            "ut0":"x","grid":{"x":[1,0,3],"t":[0,1,3]}})",
         "/grid/x");
}

TEST_CASE("check_variables rejects stray variables") {
  CHECK_NOTHROW(check_variables(Expression::parse("x*t"), {Var::X, Var::T}, "a"));
  CHECK_THROWS_AS(check_variables(Expression::parse("x*u"), {Var::X, Var::T}, "a"),
                  ProblemError);
}
