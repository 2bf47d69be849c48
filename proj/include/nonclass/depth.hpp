#pragma once

// Nonclassical depth: the smallest tau for which R(z; tau) >= 0 on the whole
// phase plane. Computed by minimizing R over a box (coarse grid + simplex
// refinement) inside a bisection on tau, with analytic shortcuts for Gaussian
// states and the vacuum-free rule.

#include <optional>
#include <string_view>
#include <vector>

#include "nonclass/phase_space.hpp"
#include "nonclass/states.hpp"

namespace nonclass {

struct SearchBox {
  /// Half-width of the square searched around the origin; <= 0 picks
  /// default_search_radius().
  double radius = 0.0;
  int coarse_resolution = 161;
  /// Simplex stopping tolerance on R values.
  double refine_tolerance = 1e-10;
  /// Number of grid local minima refined.
  int seeds = 5;
};

enum class DepthMethod { numeric_bisection, analytic_gaussian, rule_zero_vacuum, rule_mixture_squeezed };

std::string_view to_string(DepthMethod method);

struct MinimumSample {
  double tau = 0.0;
  Complex z_min;
  double r_min = 0.0;
};

struct DepthReport {
  double tau_m = 0.0;
  DepthMethod method = DepthMethod::numeric_bisection;
  /// Every global minimization performed, sorted by tau.
  std::vector<MinimumSample> min_trace;
  int iterations = 0;
  double tolerance = 0.0;
  /// tau_m = 1 because R still dips below zero at 1 - tolerance.
  bool boundary = false;
  /// The negativity predicate was not monotone in tau; tau_m is then the
  /// conservative upper end of the sampled sign pattern.
  bool non_monotone = false;
};

struct DepthOptions {
  double tol_tau = 1e-3;
  /// Scaled by 1/(pi tau) before comparing with min R.
  double tol_R = 1e-9;
  SearchBox box;
};

/// Scale of the state in phase space: sqrt(N_max) for Fock parts, max |alpha_i|
/// for coherent parts, |alpha| + 2 e^r for squeezed parts; maximized over
/// mixture components.
double characteristic_amplitude(const StateSpec& spec);

/// characteristic_amplitude + 4 sqrt(tau_hi).
double default_search_radius(const StateSpec& spec, double tau_hi = 1.0);

/// Smallest R(z; tau) over the square [-radius, radius]^2: the coarse grid's
/// best local minima are refined by simplex descent. When sqrt(tau) is small
/// against the radius, finer grids of half-width 6 sqrt(tau) (1 + sqrt(N_max))
/// around the origin and every coherent amplitude are scanned as well. r_min
/// never exceeds the best grid sample. Requires 0 < tau < 1.
MinimumSample global_min_r(const PhaseSpaceEvaluator& evaluator, double tau, const SearchBox& box);
MinimumSample global_min_r(const StateSpec& spec, double tau, const SearchBox& box = {});

/// tanh r / (1 + tanh r).
DepthReport depth_gaussian(const SqueezedState& state);

/// Rule-based depth when one applies:
///  - no vacuum component anywhere (rho(0,0) = 0): tau_m = 1;
///  - a pure squeezed state: the analytic Gaussian depth;
///  - a mixture of coherent and squeezed states: the largest squeezed depth.
std::optional<DepthReport> depth_rules(const StateSpec& spec);

/// Rules first, then bisection on [min R >= -tol_R/(pi tau)] over
/// [tol_tau, 1 - tol_tau], audited at five extra tau values.
DepthReport nonclassical_depth(const StateSpec& spec, const DepthOptions& options = {});

}  // namespace nonclass
