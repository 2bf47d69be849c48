#include "nonclass/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "nonclass/errors.hpp"

namespace nonclass {

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw DomainError(path + ": " + message);
}

const Json& field(const Json& obj, const std::string& path, const char* key) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing field");
  return *it;
}

double number(const Json& value, const std::string& path) {
  if (!value.is_number()) schema_error(path, "expected a number");
  return value.get<double>();
}

Complex complex_value(const Json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) schema_error(path, "expected [re, im]");
  const Complex c{number(value[0], path + "[0]"), number(value[1], path + "[1]")};
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) schema_error(path, "non-finite value");
  return c;
}

const Json& nonempty_array(const Json& obj, const std::string& path, const char* key) {
  const Json& arr = field(obj, path, key);
  if (!arr.is_array() || arr.empty()) schema_error(path + "." + key, "expected a non-empty array");
  return arr;
}

PureState parse_pure(const Json& doc, const std::string& path) {
  const Json& type = field(doc, path, "type");
  if (!type.is_string()) schema_error(path + ".type", "expected a string");
  const std::string kind = type.get<std::string>();
  try {
    if (kind == "fock") {
      const Json& arr = nonempty_array(doc, path, "coeffs");
      std::vector<Complex> coeffs;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        coeffs.push_back(complex_value(arr[i], path + ".coeffs[" + std::to_string(i) + "]"));
      }
      return FockSuperposition(std::move(coeffs));
    }
    if (kind == "coherent_superposition") {
      const Json& arr = nonempty_array(doc, path, "terms");
      std::vector<CoherentTerm> terms;
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = path + ".terms[" + std::to_string(i) + "]";
        terms.push_back({complex_value(field(arr[i], p, "coeff"), p + ".coeff"),
                         complex_value(field(arr[i], p, "alpha"), p + ".alpha")});
      }
      return CoherentSuperposition(std::move(terms));
    }
    if (kind == "squeezed") {
      const Complex alpha = complex_value(field(doc, path, "alpha"), path + ".alpha");
      const Json& zeta = field(doc, path, "zeta");
      const double r = number(field(zeta, path + ".zeta", "r"), path + ".zeta.r");
      const double theta = number(field(zeta, path + ".zeta", "theta"), path + ".zeta.theta");
      return SqueezedState(alpha, r, theta);
    }
  } catch (const DomainError& e) {
    const std::string what = e.what();
    if (what.rfind(path, 0) == 0) throw;
    schema_error(path, what);
  }
  if (kind == "mixture") schema_error(path + ".type", "mixtures cannot be nested");
  schema_error(path + ".type", "unknown state type '" + kind + "'");
}

std::string csv_complex(Complex c) { return format_double(c.real()) + "," + format_double(c.imag()); }

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

}  // namespace

StateSpec parse_state(const Json& doc) {
  const std::string root = "state";
  const Json& type = field(doc, root, "type");
  if (type.is_string() && type.get<std::string>() == "mixture") {
    const Json& arr = nonempty_array(doc, root, "components");
    std::vector<MixtureComponent> components;
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string p = root + ".components[" + std::to_string(i) + "]";
      const double weight = number(field(arr[i], p, "weight"), p + ".weight");
      components.push_back({weight, parse_pure(field(arr[i], p, "state"), p + ".state")});
    }
    try {
      return mix(std::move(components));
    } catch (const DomainError& e) {
      schema_error(root + ".components", e.what());
    }
  }
  return StateSpec(parse_pure(doc, root));
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError(path.string() + ": malformed JSON: " + e.what());
  }
}

StateSpec parse_state_file(const std::filesystem::path& path) { return parse_state(read_json_file(path)); }

Json to_json(const DepthReport& report) {
  Json trace = Json::array();
  for (const auto& s : report.min_trace) {
    trace.push_back({{"tau", s.tau}, {"z_min", complex_json(s.z_min)}, {"R_min", s.r_min}});
  }
  return {{"tau_m", report.tau_m},
          {"method", std::string(to_string(report.method))},
          {"min_trace", std::move(trace)},
          {"iterations", report.iterations},
          {"tolerance", report.tolerance},
          {"boundary", report.boundary},
          {"non_monotone", report.non_monotone}};
}

Json to_json(const DistanceReport& report) {
  Json trace = Json::array();
  for (const auto& s : report.trace) {
    trace.push_back({{"seed", complex_json(s.seed)}, {"beta", complex_json(s.beta)}, {"q", s.q}});
  }
  return {{"d_m", report.d_m},
          {"beta_star", complex_json(report.beta_star)},
          {"q_max", report.q_max},
          {"seeds_tried", report.seeds_tried},
          {"method", std::string(to_string(report.method))},
          {"trace", std::move(trace)}};
}

Json to_json(const DiagnosticsReport& report) {
  return {{"mandel_q", report.mandel_q ? Json(*report.mandel_q) : Json(nullptr)},
          {"impurity_D", report.impurity_D},
          {"mean_n", report.mean_n},
          {"var_x1", report.var_x1},
          {"var_x2", report.var_x2},
          {"min_quadrature_var_angle", report.min_quadrature_var_angle},
          {"best_var", report.best_var},
          {"tail_mass", report.tail_mass}};
}

std::string canonical_dump(const Json& doc) { return doc.dump(2); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, result.ptr);
}

void write_min_trace_csv(std::ostream& out, const DepthReport& report) {
  out << "tau,x_min,y_min,R_min\n";
  for (const auto& s : report.min_trace) {
    out << format_double(s.tau) << ',' << csv_complex(s.z_min) << ',' << format_double(s.r_min) << '\n';
  }
}

void write_ascent_trace_csv(std::ostream& out, const DistanceReport& report) {
  out << "seed_x,seed_y,beta_x,beta_y,q\n";
  for (const auto& s : report.trace) {
    out << csv_complex(s.seed) << ',' << csv_complex(s.beta) << ',' << format_double(s.q) << '\n';
  }
}

}  // namespace nonclass
