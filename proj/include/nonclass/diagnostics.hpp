#pragma once

// Photon statistics and quadrature indicators, with X_theta =
// (a e^{-i theta} + a^dag e^{i theta}) / 2 so that the vacuum variance is 1/4.

#include <optional>

#include "nonclass/states.hpp"

namespace nonclass {

/// Exact for pure components; mixtures average the component values.
double mean_photon_number(const StateSpec& spec);

/// <n^2>/<n> - <n> - 1 from the number-basis diagonal. DomainError for the
/// vacuum, where it is undefined.
double mandel_q(const StateSpec& spec);

/// Tr(rho - rho^2).
double impurity(const StateSpec& spec);

struct QuadratureVariances {
  double var_x1 = 0.25;
  double var_x2 = 0.25;
  /// theta in [0, pi) minimizing Var[X_theta].
  double best_angle = 0.0;
  double best_var = 0.25;
};

QuadratureVariances quadrature_variances(const StateSpec& spec);

struct DiagnosticsReport {
  std::optional<double> mandel_q;  ///< empty for the vacuum
  double impurity_D = 0.0;
  double mean_n = 0.0;
  double var_x1 = 0.25;
  double var_x2 = 0.25;
  double min_quadrature_var_angle = 0.0;
  double best_var = 0.25;
  double tail_mass = 0.0;
};

DiagnosticsReport diagnostics(const StateSpec& spec);

}  // namespace nonclass
