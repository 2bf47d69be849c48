#include <doctest.h>

#include <sstream>

#include "nonclass/errors.hpp"
#include "nonclass/json_io.hpp"

using namespace nonclass;

namespace {

std::string error_of(const std::string& text) {
  try {
    (void)parse_state(Json::parse(text));
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("parse each state type") {
  const StateSpec f = parse_state(Json::parse(R"({"type":"fock","coeffs":[[0,0],[1,0]]})"));
  CHECK(f.kind() == StateKind::fock);
  const StateSpec c = parse_state(
      Json::parse(R"({"type":"coherent_superposition","terms":[{"coeff":[1,0],"alpha":[1.5,0]},{"coeff":[1,0],"alpha":[-1.5,0]}]})"));
  CHECK(c.kind() == StateKind::coherent_superposition);
  const StateSpec s = parse_state(Json::parse(R"({"type":"squeezed","alpha":[0.1,0.2],"zeta":{"r":1,"theta":0.5}})"));
  REQUIRE(s.kind() == StateKind::squeezed);
  CHECK(std::get<SqueezedState>(s.pure()).r() == 1.0);
  const StateSpec m = parse_state(Json::parse(
      R"({"type":"mixture","components":[{"weight":0.3,"state":{"type":"fock","coeffs":[[1,0]]}},{"weight":0.7,"state":{"type":"fock","coeffs":[[0,0],[0,0],[1,0]]}}]})"));
  CHECK(m.is_mixture());
  CHECK(m.components().size() == 2);
}

TEST_CASE("errors name the offending field") {
  CHECK(error_of(R"({"coeffs":[[1,0]]})").find("state.type") != std::string::npos);
  CHECK(error_of(R"({"type":"fock","coeffs":[[1,0],[1]]})").find("state.coeffs[1]") != std::string::npos);
  CHECK(error_of(R"({"type":"fock","coeffs":[]})").find("state.coeffs") != std::string::npos);
  CHECK(error_of(R"({"type":"squeezed","alpha":[0,0],"zeta":{"r":1}})").find("state.zeta.theta") != std::string::npos);
  CHECK(error_of(R"({"type":"squeezed","alpha":[0,0],"zeta":{"r":-1,"theta":0}})").find("state") != std::string::npos);
  CHECK(error_of(R"({"type":"wigner"})").find("unknown state type") != std::string::npos);
  CHECK(error_of(R"({"type":"mixture","components":[{"weight":0.5,"state":{"type":"fock","coeffs":[[1,0]]}}]})")
            .find("state.components") != std::string::npos);
  CHECK(error_of(R"({"type":"mixture","components":[{"weight":1,"state":{"type":"mixture","components":[]}}]})")
            .find("state.components[0].state.type") != std::string::npos);
  CHECK(error_of(R"({"type":"coherent_superposition","terms":[{"coeff":[1,0]}]})").find("state.terms[0].alpha") !=
        std::string::npos);
}

TEST_CASE("reports round-trip byte for byte") {
  DepthReport d;
  d.tau_m = 0.1 + 0.2;
  d.min_trace.push_back({0.5, {1.0 / 3.0, -2e-17}, -0.123456789012345678});
  d.iterations = 11;
  d.tolerance = 1e-3;
  DistanceReport r;
  r.d_m = 1.0 - std::exp(-1.0);
  r.beta_star = {std::sqrt(2.0), 0.0};
  r.trace.push_back({{0, 0}, {1, 1}, 0.3});
  DiagnosticsReport g;
  g.mandel_q = -0.5;
  DiagnosticsReport vac;
  for (const Json& doc : {to_json(d), to_json(r), to_json(g), to_json(vac)}) {
    const std::string text = canonical_dump(doc);
    CHECK(canonical_dump(Json::parse(text)) == text);
  }
  CHECK(to_json(vac)["mandel_q"].is_null());
  CHECK(to_json(d)["method"] == "numeric_bisection");
  CHECK(Json::parse(canonical_dump(to_json(d)))["tau_m"].get<double>() == 0.1 + 0.2);
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(-2.5e-300) == "-2.5e-300");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("trace CSVs") {
  DepthReport d;
  d.min_trace.push_back({0.25, {0.5, -1.0}, -2.0});
  std::ostringstream a;
  write_min_trace_csv(a, d);
  CHECK(a.str() == "tau,x_min,y_min,R_min\n0.25,0.5,-1,-2\n");
  DistanceReport r;
  r.trace.push_back({{1, 0}, {1.5, 0.25}, 0.125});
  std::ostringstream b;
  write_ascent_trace_csv(b, r);
  CHECK(b.str() == "seed_x,seed_y,beta_x,beta_y,q\n1,0,1.5,0.25,0.125\n");
}

TEST_CASE("unreadable or malformed files") {
  CHECK_THROWS_AS(read_json_file("/nonexistent/state.json"), DomainError);
}
