#pragma once

#include <functional>

#include "nonclass/states.hpp"

namespace nonclass {

struct SimplexOptions {
  double initial_step = 0.1;
  /// Converged when the vertex values span at most f_tolerance ...
  double f_tolerance = 1e-10;
  /// ... and every vertex lies within x_tolerance of the best one.
  double x_tolerance = 1e-8;
  int max_evaluations = 5000;
  /// Fresh simplexes started from the converged point.
  int restarts = 1;
};

struct SimplexResult {
  Complex x;
  double f = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Nelder-Mead descent over the complex plane (treated as R^2).
SimplexResult minimize_simplex(const std::function<double(Complex)>& f, Complex start, const SimplexOptions& options = {});

}  // namespace nonclass
