#include <doctest.h>

#include <cmath>

#include "nonclass/simplex.hpp"

using namespace nonclass;

TEST_CASE("quadratic bowl") {
  const Complex target{1.3, -0.4};
  const auto r = minimize_simplex([&](Complex z) { return std::norm(z - target) + 2.0; }, {0, 0});
  CHECK(r.converged);
  CHECK(std::abs(r.x - target) < 1e-6);
  CHECK(r.f == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("Rosenbrock valley") {
  auto rosen = [](Complex z) {
    const double x = z.real();
    const double y = z.imag();
    return (1 - x) * (1 - x) + 100 * (y - x * x) * (y - x * x);
  };
  SimplexOptions opt;
  opt.f_tolerance = 1e-14;
  opt.x_tolerance = 1e-10;
  opt.max_evaluations = 20000;
  opt.restarts = 2;
  const auto r = minimize_simplex(rosen, {-1.2, 1.0}, opt);
  CHECK(std::abs(r.x - Complex{1, 1}) < 1e-5);
}

TEST_CASE("evaluation budget is respected") {
  SimplexOptions opt;
  opt.max_evaluations = 30;
  opt.restarts = 0;
  const auto r = minimize_simplex([](Complex z) { return std::abs(z.real()) + std::abs(z.imag()); }, {5, 5}, opt);
  CHECK(r.evaluations <= 40);
  CHECK_FALSE(r.converged);
}
