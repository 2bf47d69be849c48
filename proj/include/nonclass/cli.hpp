#pragma once

// Front-end shared by the `nonclass` executable and the tests.
//
// Exit codes: 0 success, 2 input or domain error, 3 numeric failure
// (overflow, singular regime, cutoff limit, too many failed sweep rows).

#include <iosfwd>
#include <string>
#include <vector>

#include "nonclass/depth.hpp"
#include "nonclass/json_io.hpp"

namespace nonclass {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumeric = 3;

enum class SweepFamily { vac_fock_mixture, vac_fock_superposition, cat_even, cat_odd, squeezed };
enum class SweepMeasure { depth, distance, both };

struct SweepSpec {
  SweepFamily family = SweepFamily::vac_fock_mixture;
  /// One tuple per row, in output order.
  std::vector<std::vector<double>> param_grid;
  SweepMeasure measure = SweepMeasure::depth;
  std::string output_path;
  DepthOptions depth;
};

/// Accepts `param_grid` (list of tuples) or `param_axes` (list of value lists,
/// expanded as a Cartesian product with the last axis fastest). Optional
/// `tol_tau`, `tol_R`, `grid`, `radius` tune the depth search. Throws
/// DomainError for values outside the family's domain.
SweepSpec parse_sweep(const Json& doc);

/// Column names of the parameter tuple.
std::vector<std::string> sweep_parameter_names(SweepFamily family);

/// The state at one grid point. Zero-weight mixture components are dropped.
StateSpec sweep_state(SweepFamily family, const std::vector<double>& params);

struct SweepRow {
  std::vector<double> params;
  double tau_m = 0.0;
  double d_m = 0.0;
  bool failed = false;
};

/// Rows run on up to `jobs` threads and come back in grid order. A failing
/// row gets NaN in its measures and a warning on `warn`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int jobs, std::ostream& warn);

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRow>& rows);

/// Runs one command line, e.g. {"nonclass", "depth", "state.json"}.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nonclass
