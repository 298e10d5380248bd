#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qhj/numeric/bisection.hpp"
#include "qhj/numeric/quadrature.hpp"
#include "qhj/numeric/richardson.hpp"

using namespace qhj;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("richardson central derivative matches analytic derivatives") {
  auto f = [](double x) { return std::sin(x); };
  const auto d = numeric::central_derivative(f, 0.7, 0.1);
  CHECK(std::fabs(d.value - std::cos(0.7)) < 1e-12);

  auto g = [](double x) { return std::exp(2.0 * x); };
  const auto dg = numeric::central_derivative(g, -0.3, 0.05);
  CHECK(std::fabs(dg.value - 2.0 * std::exp(-0.6)) < 1e-11);

  // square-root scaling of the free wave number
  auto s = [](double e) { return std::sqrt(2.0 * e) * 1.7; };
  const auto ds = numeric::central_derivative(s, 0.5, 0.01);
  CHECK(std::fabs(ds.value - 1.7 / std::sqrt(2.0 * 0.5)) < 1e-11);
}

TEST_CASE("one-sided derivative fallback") {
  auto f = [](double x) { return std::exp(x); };
  const auto d = numeric::forward_derivative(f, 0.0, 0.05);
  CHECK(std::fabs(d.value - 1.0) < 1e-9);
}

TEST_CASE("adaptive quadrature on smooth and oscillatory integrands") {
  auto f = [](double x) { return std::sin(x); };
  const auto q1 = numeric::integrate(f, 0.0, kPi, 1e-12);
  CHECK(q1.converged);
  CHECK(std::fabs(q1.value - 2.0) < 1e-11);

  auto osc = [](double x) { return std::cos(5.0 * x); };
  const auto q2 = numeric::integrate(osc, 0.0, 20.0, 1e-11);
  CHECK(q2.converged);
  CHECK(std::fabs(q2.value - std::sin(100.0) / 5.0) < 1e-10);

  // orientation
  const auto q3 = numeric::integrate(f, kPi, 0.0, 1e-12);
  CHECK(std::fabs(q3.value + 2.0) < 1e-11);

  const auto q4 = numeric::integrate(f, 1.0, 1.0, 1e-12);
  CHECK(q4.value == 0.0);
}

TEST_CASE("bisection refines a bracket to requested width") {
  auto f = [](double x) { return std::cos(x); };
  const auto b = numeric::bisect_to_width(f, 1.0, 2.0, f(1.0), 1e-12);
  CHECK(b.hi - b.lo <= 1e-12);
  CHECK(std::fabs(0.5 * (b.lo + b.hi) - kPi / 2.0) < 1e-11);
  CHECK(f(b.lo) * f(b.hi) <= 0.0);
}
