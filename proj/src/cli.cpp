#include "nonclass/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "nonclass/diagnostics.hpp"
#include "nonclass/distance.hpp"
#include "nonclass/errors.hpp"
#include "nonclass/phase_space.hpp"

namespace nonclass {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kFailedRowLimit = 0.10;

struct FamilyInfo {
  SweepFamily family;
  const char* name;
  std::vector<std::string> params;
  std::size_t required;  // trailing parameters beyond this default to 0
  bool mixture;
};

const std::vector<FamilyInfo>& families() {
  static const std::vector<FamilyInfo> table{
      {SweepFamily::vac_fock_mixture, "vac_fock_mixture", {"n", "xi"}, 2, true},
      {SweepFamily::vac_fock_superposition, "vac_fock_superposition", {"n", "xi", "phi"}, 2, false},
      {SweepFamily::cat_even, "cat_even", {"alpha"}, 1, false},
      {SweepFamily::cat_odd, "cat_odd", {"alpha"}, 1, false},
      {SweepFamily::squeezed, "squeezed", {"r", "theta"}, 1, false},
  };
  return table;
}

const FamilyInfo& info(SweepFamily family) {
  for (const auto& f : families()) {
    if (f.family == family) return f;
  }
  throw DomainError("unknown sweep family");
}

int photon_number(double value) {
  if (!(value >= 1.0) || value != std::floor(value) || value > 10000.0) {
    throw DomainError("n must be an integer >= 1");
  }
  return static_cast<int>(value);
}

double unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) throw DomainError(std::string(name) + " must lie in [0, 1]");
  return value;
}

std::vector<std::vector<double>> cartesian(const Json& axes) {
  std::vector<std::vector<double>> rows{{}};
  for (const auto& axis : axes) {
    if (!axis.is_array() || axis.empty()) throw DomainError("sweep.param_axes: each axis must be a non-empty array");
    std::vector<std::vector<double>> next;
    for (const auto& row : rows) {
      for (const auto& v : axis) {
        if (!v.is_number()) throw DomainError("sweep.param_axes: expected numbers");
        auto extended = row;
        extended.push_back(v.get<double>());
        next.push_back(std::move(extended));
      }
    }
    rows = std::move(next);
  }
  return rows;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot write " + path);
  file << text;
  if (!file) throw DomainError("failed writing " + path);
}

DistanceReport distance_of(const StateSpec& spec) { return nonclassicality_distance(spec); }

// Shared flag plumbing for the depth search.
struct DepthFlags {
  double tol_tau = 1e-3;
  double tol_r = 1e-9;
  double radius = 0.0;
  int grid = 161;

  DepthOptions options() const {
    DepthOptions o;
    o.tol_tau = tol_tau;
    o.tol_R = tol_r;
    o.box.radius = radius;
    o.box.coarse_resolution = grid;
    return o;
  }
};

GridSpec parse_window(const std::string& text, int resolution) {
  GridSpec grid;
  std::vector<double> v;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw DomainError("--window: '" + part + "' is not a number");
    }
  }
  if (v.size() != 4) throw DomainError("--window expects x0:x1:y0:y1");
  grid.x_min = v[0];
  grid.x_max = v[1];
  grid.y_min = v[2];
  grid.y_max = v[3];
  grid.resolution = resolution;
  grid.validate();
  return grid;
}

Complex parse_seed(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("--seed expects x,y");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw DomainError("--seed: cannot parse '" + text + "'");
  }
}

int jobs_from_env(int requested) {
  if (const char* env = std::getenv("NONCLASS_JOBS"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) throw DomainError("NONCLASS_JOBS must be a positive integer");
    return static_cast<int>(v);
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

std::vector<std::string> sweep_parameter_names(SweepFamily family) { return info(family).params; }

StateSpec sweep_state(SweepFamily family, const std::vector<double>& params) {
  const FamilyInfo& f = info(family);
  if (params.size() < f.required || params.size() > f.params.size()) {
    throw DomainError(std::string(f.name) + " expects " + std::to_string(f.required) + " to " +
                      std::to_string(f.params.size()) + " parameters");
  }
  auto param = [&](std::size_t i) { return i < params.size() ? params[i] : 0.0; };
  switch (family) {
    case SweepFamily::vac_fock_mixture: {
      const int n = photon_number(param(0));
      const double xi = unit_interval(param(1), "xi");
      std::vector<MixtureComponent> parts;
      if (xi > 0.0) parts.push_back({xi, FockSuperposition::number_state(0)});
      if (xi < 1.0) parts.push_back({1.0 - xi, FockSuperposition::number_state(static_cast<std::size_t>(n))});
      return mix(std::move(parts));
    }
    case SweepFamily::vac_fock_superposition:
      return StateSpec(
          make_vac_fock_superposition(unit_interval(param(1), "xi"), param(2), photon_number(param(0))));
    case SweepFamily::cat_even:
    case SweepFamily::cat_odd: {
      const double alpha = param(0);
      if (!(alpha > 0.0)) throw DomainError("alpha must be > 0");
      return StateSpec(make_cat(alpha, 0.5, family == SweepFamily::cat_even ? 0.0 : std::numbers::pi));
    }
    case SweepFamily::squeezed:
      if (!(param(0) >= 0.0)) throw DomainError("r must be >= 0");
      return StateSpec(SqueezedState(Complex{}, param(0), param(1)));
  }
  throw DomainError("unknown sweep family");
}

SweepSpec parse_sweep(const Json& doc) {
  if (!doc.is_object()) throw DomainError("sweep: expected an object");
  SweepSpec spec;

  const auto family = doc.find("family");
  if (family == doc.end() || !family->is_string()) throw DomainError("sweep.family: missing or not a string");
  bool found = false;
  for (const auto& f : families()) {
    if (family->get<std::string>() == f.name) {
      spec.family = f.family;
      found = true;
    }
  }
  if (!found) throw DomainError("sweep.family: unknown family '" + family->get<std::string>() + "'");

  if (const auto grid = doc.find("param_grid"); grid != doc.end()) {
    if (!grid->is_array()) throw DomainError("sweep.param_grid: expected an array of tuples");
    for (std::size_t i = 0; i < grid->size(); ++i) {
      const Json& row = (*grid)[i];
      const std::string path = "sweep.param_grid[" + std::to_string(i) + "]";
      std::vector<double> tuple;
      if (row.is_number()) {
        tuple.push_back(row.get<double>());
      } else if (row.is_array()) {
        for (const auto& v : row) {
          if (!v.is_number()) throw DomainError(path + ": expected numbers");
          tuple.push_back(v.get<double>());
        }
      } else {
        throw DomainError(path + ": expected a tuple");
      }
      spec.param_grid.push_back(std::move(tuple));
    }
  } else if (const auto axes = doc.find("param_axes"); axes != doc.end() && axes->is_array()) {
    spec.param_grid = cartesian(*axes);
  }
  if (spec.param_grid.empty()) throw DomainError("sweep.param_grid: must be non-empty");

  for (std::size_t i = 0; i < spec.param_grid.size(); ++i) {
    try {
      (void)sweep_state(spec.family, spec.param_grid[i]);
    } catch (const DomainError& e) {
      throw DomainError("sweep.param_grid[" + std::to_string(i) + "]: " + e.what());
    }
  }

  const std::string measure = doc.value("measure", std::string("depth"));
  if (measure == "depth") {
    spec.measure = SweepMeasure::depth;
  } else if (measure == "distance") {
    spec.measure = SweepMeasure::distance;
  } else if (measure == "both") {
    spec.measure = SweepMeasure::both;
  } else {
    throw DomainError("sweep.measure: expected depth, distance or both");
  }
  if (spec.measure != SweepMeasure::depth && info(spec.family).mixture) {
    throw UnsupportedStateError("sweep.measure: the distance-type degree is defined for pure states only; " +
                                std::string(info(spec.family).name) + " is a mixture family");
  }

  const auto out = doc.find("output_path");
  if (out == doc.end() || !out->is_string() || out->get<std::string>().empty()) {
    throw DomainError("sweep.output_path: missing or not a string");
  }
  spec.output_path = out->get<std::string>();

  try {
    spec.depth.tol_tau = doc.value("tol_tau", spec.depth.tol_tau);
    spec.depth.tol_R = doc.value("tol_R", spec.depth.tol_R);
    spec.depth.box.coarse_resolution = doc.value("grid", spec.depth.box.coarse_resolution);
    spec.depth.box.radius = doc.value("radius", spec.depth.box.radius);
  } catch (const Json::exception& e) {
    throw DomainError(std::string("sweep: bad depth option: ") + e.what());
  }
  return spec;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs, std::ostream& warn) {
  std::vector<SweepRow> rows(spec.param_grid.size());
  std::atomic<std::size_t> next{0};
  std::mutex warn_mutex;
  const bool want_depth = spec.measure != SweepMeasure::distance;
  const bool want_distance = spec.measure != SweepMeasure::depth;

  auto worker = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++) {
      SweepRow& row = rows[i];
      row.params = spec.param_grid[i];
      row.tau_m = kNaN;
      row.d_m = kNaN;
      try {
        const StateSpec state = sweep_state(spec.family, row.params);
        if (want_depth) row.tau_m = nonclassical_depth(state, spec.depth).tau_m;
        if (want_distance) row.d_m = distance_of(state).d_m;
      } catch (const std::exception& e) {
        row.failed = true;
        const std::lock_guard lock(warn_mutex);
        warn << "warning: sweep row " << i << " failed: " << e.what() << '\n';
      }
    }
  };

  const int threads = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(rows.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const auto names = sweep_parameter_names(spec.family);
  for (const auto& name : names) out << name << ',';
  out << "tau_m,d_m\n";
  const bool want_depth = spec.measure != SweepMeasure::distance;
  const bool want_distance = spec.measure != SweepMeasure::depth;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < names.size(); ++k) {
      out << format_double(k < row.params.size() ? row.params[k] : 0.0) << ',';
    }
    if (want_depth) out << format_double(row.tau_m);
    out << ',';
    if (want_distance) out << format_double(row.d_m);
    out << '\n';
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Nonclassicality of single-mode states: nonclassical depth and distance-type degree", "nonclass"};
  app.require_subcommand(1);

  std::string state_path;
  DepthFlags depth_flags;
  std::string trace_csv;

  auto* depth = app.add_subcommand("depth", "nonclassical depth tau_m of a state");
  depth->add_option("state", state_path, "state JSON file")->required();
  depth->add_option("--tol-tau", depth_flags.tol_tau, "bisection tolerance in tau, [1e-4, 1e-2]");
  depth->add_option("--tol-R", depth_flags.tol_r, "negativity tolerance, scaled by 1/(pi tau)");
  depth->add_option("--radius", depth_flags.radius, "half-width of the search square (0: automatic)");
  depth->add_option("--grid", depth_flags.grid, "coarse grid resolution per axis");
  depth->add_option("--trace-csv", trace_csv, "write the per-tau minima as CSV");

  std::vector<std::string> seeds;
  bool force_numeric = false;
  auto* distance = app.add_subcommand("distance", "distance-type degree d_m of a pure state");
  distance->add_option("state", state_path, "state JSON file")->required();
  distance->add_option("--seed", seeds, "extra ascent seed x,y (repeatable)");
  distance->add_flag("--numeric", force_numeric, "skip closed forms");
  distance->add_option("--trace-csv", trace_csv, "write the ascent trace as CSV");

  double tau = 0.5;
  std::string window = "-4:4:-4:4";
  int resolution = 101;
  std::string grid_out;
  auto* rfunc = app.add_subcommand("rfunc", "sample R(z; tau) on a grid");
  rfunc->add_option("state", state_path, "state JSON file")->required();
  rfunc->add_option("--tau", tau, "tau in (0, 1]")->required();
  rfunc->add_option("--window", window, "x0:x1:y0:y1");
  rfunc->add_option("--res", resolution, "samples per axis");
  rfunc->add_option("--out", grid_out, "CSV output path");

  auto* diag = app.add_subcommand("diag", "Mandel q, impurity, quadrature variances");
  diag->add_option("state", state_path, "state JSON file")->required();

  std::string sweep_path;
  int jobs = 0;
  auto* sweep = app.add_subcommand("sweep", "parameter sweep to CSV");
  sweep->add_option("spec", sweep_path, "sweep JSON file")->required();
  sweep->add_option("--jobs", jobs, "worker threads (NONCLASS_JOBS overrides)");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitDomain;
  }

  try {
    if (*depth) {
      const DepthReport report = nonclassical_depth(parse_state_file(state_path), depth_flags.options());
      if (!trace_csv.empty()) {
        std::ostringstream csv;
        write_min_trace_csv(csv, report);
        write_text_file(trace_csv, csv.str());
      }
      out << canonical_dump(to_json(report)) << '\n';
    } else if (*distance) {
      std::vector<Complex> extra;
      for (const auto& s : seeds) extra.push_back(parse_seed(s));
      const StateSpec spec = parse_state_file(state_path);
      const DistanceReport report =
          force_numeric ? numeric_distance(spec, extra) : nonclassicality_distance(spec, extra);
      if (!trace_csv.empty()) {
        std::ostringstream csv;
        write_ascent_trace_csv(csv, report);
        write_text_file(trace_csv, csv.str());
      }
      out << canonical_dump(to_json(report)) << '\n';
    } else if (*rfunc) {
      if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("--tau must lie in (0, 1]");
      const GridSpec grid = parse_window(window, resolution);
      const RGrid samples = r_grid(parse_state_file(state_path), tau, grid);
      if (!grid_out.empty()) {
        std::ostringstream csv;
        write_grid_csv(csv, samples);
        write_text_file(grid_out, csv.str());
      }
      const auto [lo, hi] = std::minmax_element(samples.values.begin(), samples.values.end());
      const auto k = static_cast<int>(lo - samples.values.begin());
      const Json summary{{"tau", tau},
                         {"min", *lo},
                         {"max", *hi},
                         {"argmin", Json::array({grid.x(k % grid.resolution), grid.y(k / grid.resolution)})}};
      out << canonical_dump(summary) << '\n';
    } else if (*diag) {
      out << canonical_dump(to_json(diagnostics(parse_state_file(state_path)))) << '\n';
    } else if (*sweep) {
      const SweepSpec spec = parse_sweep(read_json_file(sweep_path));
      const auto rows = run_sweep(spec, jobs_from_env(jobs), err);
      std::ostringstream csv;
      write_sweep_csv(csv, spec, rows);
      write_text_file(spec.output_path, csv.str());
      const auto failed = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.failed; });
      out << canonical_dump({{"rows", rows.size()}, {"failed", failed}, {"output_path", spec.output_path}}) << '\n';
      if (static_cast<double>(failed) > kFailedRowLimit * static_cast<double>(rows.size())) {
        err << "error: " << failed << " of " << rows.size() << " sweep rows failed\n";
        return kExitNumeric;
      }
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitOk;
}

}  // namespace nonclass
