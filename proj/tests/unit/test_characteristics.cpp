#include <cmath>

#include "charred/characteristics.hpp"
#include "doctest.h"

using namespace charred;

TEST_CASE("a = x gives exponential characteristics") {
  Expression a = Expression::parse("x");
  CharacteristicCurve c = trace_forward(a, 0.5, 0.0, 2.0);
  CHECK(c.foot() == 0.5);
  for (double t : {0.0, 0.3, 1.0, 2.0})
    CHECK(c.x_at(t) == doctest::Approx(0.5 * std::exp(t)).epsilon(1e-8));
}

TEST_CASE("constant a gives straight characteristics") {
  Expression a = Expression::parse("1");
  CharacteristicCurve c = trace_forward(a, -1.0, 1.0, 3.0);
  CHECK(c.x_at(2.5) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("backward trace recovers the foot point") {
  Expression a = Expression::parse("x");
  for (double x0 : {0.1, 0.7, 1.9}) {
    CharacteristicCurve c = trace_forward(a, x0, 0.0, 1.5);
    double foot = trace_backward(a, c.x_at(1.5), 1.5, 0.0);
    CHECK(foot == doctest::Approx(x0).epsilon(1e-7));
  }
}

TEST_CASE("tracing is a semigroup") {
  Expression a = Expression::parse("x*t");
  CharacteristicCurve whole = trace_forward(a, 1.0, 0.0, 2.0);
  CharacteristicCurve first = trace_forward(a, 1.0, 0.0, 1.0);
  CharacteristicCurve second = trace_forward(a, first.x_at(1.0), 1.0, 2.0);
  CHECK(whole.x_at(2.0) == doctest::Approx(second.x_at(2.0)).epsilon(1e-8));
  // exact: x(t) = exp(t^2/2)
  CHECK(whole.x_at(2.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-8));
}

TEST_CASE("damping integral") {
  CHECK(damping_integral(Expression::parse("0"), 0.0, 5.0) == 0.0);
  CHECK(damping_integral(Expression::parse("1"), 0.0, 2.5) ==
        doctest::Approx(2.5).epsilon(1e-10));
  CHECK(damping_integral(Expression::parse("1/t"), 1.0, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(damping_integral(Expression::parse("2/t"), 1.0, 3.0) ==
        doctest::Approx(2 * std::log(3.0)).epsilon(1e-9));
  // signed: integrating backward flips the sign
  CHECK(damping_integral(Expression::parse("1"), 2.0, 1.0) ==
        doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("singular damping integrand is an error") {
  CHECK_THROWS(damping_integral(Expression::parse("1/t"), 0.0, 1.0));
}
