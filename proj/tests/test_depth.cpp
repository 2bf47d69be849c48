#include <doctest.h>

#include <cmath>

#include "nonclass/depth.hpp"
#include "nonclass/errors.hpp"
#include "oracles.hpp"

using namespace nonclass;

namespace {

StateSpec vac_fock_mixture(int n, double xi) {
  return mix({{xi, FockSuperposition::number_state(0)},
              {1.0 - xi, FockSuperposition::number_state(static_cast<std::size_t>(n))}});
}

}  // namespace

TEST_CASE("classical states have zero depth") {
  const auto vac = nonclassical_depth(StateSpec(FockSuperposition::number_state(0)));
  CHECK(vac.tau_m == 0.0);
  CHECK(vac.method == DepthMethod::analytic_gaussian);
  const auto coh = nonclassical_depth(StateSpec(CoherentSuperposition::coherent({1.2, -0.4})));
  CHECK(coh.tau_m == 0.0);
  CHECK_FALSE(coh.non_monotone);
  const auto endpoint = nonclassical_depth(StateSpec(make_vac_fock_superposition(1.0, 0.0, 2)));
  CHECK(endpoint.tau_m == 0.0);
  CHECK(endpoint.method == DepthMethod::analytic_gaussian);
  const StateSpec blend = mix({{0.3, CoherentSuperposition::coherent({1, 0})}, {0.7, FockSuperposition::number_state(0)}});
  CHECK(nonclassical_depth(blend).tau_m == 0.0);
  CHECK(nonclassical_depth(blend).method == DepthMethod::analytic_gaussian);
}

TEST_CASE("the numeric path also finds zero for classical input") {
  const PhaseSpaceEvaluator ev(StateSpec(CoherentSuperposition::coherent({0.7, 0.2})));
  CHECK(global_min_r(ev, 0.05, SearchBox{}).r_min >= -1e-12);
}

TEST_CASE("vacuum-free states short-circuit to one") {
  for (std::size_t n : {1u, 2u, 5u}) {
    const auto r = nonclassical_depth(StateSpec(FockSuperposition::number_state(n)));
    CHECK(r.tau_m == 1.0);
    CHECK(r.method == DepthMethod::rule_zero_vacuum);
  }
  CHECK(nonclassical_depth(StateSpec(FockSuperposition({{0, 0}, {0.6, 0}, {0, 0.8}}))).method ==
        DepthMethod::rule_zero_vacuum);
  // The odd cat has no vacuum component even though each coherent term does.
  CHECK(nonclassical_depth(StateSpec(make_cat(1.3, 0.5, std::numbers::pi))).method == DepthMethod::rule_zero_vacuum);
  CHECK(nonclassical_depth(StateSpec(make_cat(1.3, 0.5, 0.0))).method == DepthMethod::numeric_bisection);
}

TEST_CASE("squeezed depth is analytic and increasing in r") {
  double last = 0.0;
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    const auto rep = nonclassical_depth(StateSpec(SqueezedState({0.5, 0}, r, 0.3)));
    CHECK(rep.method == DepthMethod::analytic_gaussian);
    CHECK(rep.tau_m == doctest::Approx(std::tanh(r) / (1 + std::tanh(r))));
    CHECK(rep.tau_m > last);
    CHECK(rep.tau_m < 0.5);
    last = rep.tau_m;
  }
}

TEST_CASE("coherent plus squeezed mixture takes the squeezed depth") {
  const StateSpec m = mix({{0.4, CoherentSuperposition::coherent({1, 0})}, {0.6, SqueezedState({}, 1.0, 0.0)}});
  const auto rep = nonclassical_depth(m);
  CHECK(rep.method == DepthMethod::rule_mixture_squeezed);
  CHECK(rep.tau_m == doctest::Approx(std::tanh(1.0) / (1 + std::tanh(1.0))));
}

TEST_CASE("vacuum/number mixtures follow the bracket oracle") {
  for (double xi : {0.2, 0.6}) {
    const auto r1 = nonclassical_depth(vac_fock_mixture(1, xi));
    CHECK(std::abs(r1.tau_m - (1.0 - xi)) <= 1e-3);
    CHECK_FALSE(r1.non_monotone);
    const auto r3 = nonclassical_depth(vac_fock_mixture(3, xi));
    CHECK(std::abs(r3.tau_m - oracle::vac_fock_mixture_depth(3, xi, 1e-6)) <= 1e-3);
  }
}

TEST_CASE("pure vacuum/number superposition sits on the boundary") {
  const auto rep = nonclassical_depth(StateSpec(make_vac_fock_superposition(0.7, 1.0, 2)));
  CHECK(rep.tau_m == 1.0);
  CHECK(rep.boundary);
}

TEST_CASE("trace is sorted and records every minimization") {
  const auto rep = nonclassical_depth(vac_fock_mixture(2, 0.4));
  REQUIRE(rep.min_trace.size() >= static_cast<std::size_t>(rep.iterations) + 2);
  for (std::size_t i = 1; i < rep.min_trace.size(); ++i) CHECK(rep.min_trace[i - 1].tau <= rep.min_trace[i].tau);
  CHECK(rep.tolerance == 1e-3);
}

TEST_CASE("global minimum of R") {
  const StateSpec one(FockSuperposition::number_state(1));
  const auto m = global_min_r(one, 0.5);
  CHECK(std::abs(m.z_min) < 1e-6);
  CHECK(m.r_min == doctest::Approx(-2.0 / std::numbers::pi).epsilon(1e-12));

  // Cat: minima lie on the ring predicted for the interference fringes.
  const double alpha = 1.5;
  const double tau = 0.5;
  const StateSpec cat(make_cat(alpha, 0.5, 0.0));
  const auto c = global_min_r(cat, tau);
  CHECK(std::abs(c.z_min.real()) < 1e-5);
  CHECK(std::abs(std::abs(c.z_min.imag()) - std::numbers::pi * tau / (2 * alpha)) < 0.1);
  CHECK(c.r_min < 0.0);

  SearchBox coarse;
  coarse.coarse_resolution = 21;
  coarse.seeds = 0;
  const auto grid_only = global_min_r(cat, tau, coarse);
  coarse.seeds = 5;
  CHECK(global_min_r(cat, tau, coarse).r_min <= grid_only.r_min);
}

TEST_CASE("numeric search on a non-Gaussian mixture with a squeezed part starts above its depth") {
  const StateSpec m = mix({{0.5, SqueezedState({}, 0.5, 0.0)}, {0.5, make_cat(1.0, 0.5, 0.0)}});
  DepthOptions opt;
  opt.tol_tau = 1e-2;
  opt.box.coarse_resolution = 61;
  const auto rep = nonclassical_depth(m, opt);
  CHECK(rep.method == DepthMethod::numeric_bisection);
  CHECK(rep.tau_m >= squeezed_singular_tau(0.5));
  for (const auto& s : rep.min_trace) CHECK(s.tau > squeezed_singular_tau(0.5));
}

TEST_CASE("option validation") {
  DepthOptions opt;
  opt.tol_tau = 0.5;
  CHECK_THROWS_AS(nonclassical_depth(StateSpec(FockSuperposition::number_state(0)), opt), DomainError);
  opt.tol_tau = 1e-3;
  opt.tol_R = 0.0;
  CHECK_THROWS_AS(nonclassical_depth(StateSpec(FockSuperposition::number_state(0)), opt), DomainError);
  CHECK_THROWS_AS(global_min_r(StateSpec(FockSuperposition::number_state(0)), 1.0), DomainError);
}

TEST_CASE("search radius") {
  CHECK(characteristic_amplitude(StateSpec(FockSuperposition::number_state(4))) == doctest::Approx(2.0));
  CHECK(characteristic_amplitude(StateSpec(SqueezedState({1, 0}, 0.0, 0.0))) == doctest::Approx(3.0));
  CHECK(default_search_radius(StateSpec(make_cat(2.0, 0.5, 0.0)), 0.25) == doctest::Approx(4.0));
}
