#pragma once

#include <cmath>
#include <vector>

namespace nonclass {

/// L_n^{(k)}(x) by the upward three-term recurrence in n.
double laguerre(int n, double k, double x);

/// A value stored as mantissa * exp(log_scale). Used where Laguerre values
/// and their prefactors would leave double range.
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }
  int sign() const { return mantissa > 0.0 ? 1 : (mantissa < 0.0 ? -1 : 0); }
  double value() const { return mantissa * std::exp(log_scale); }
};

/// L_j^{(k)}(x) for j = 0..n_max. The recurrence keeps a running scale so
/// that no intermediate overflows; each entry carries its own log scale.
std::vector<ScaledValue> laguerre_sequence(int n_max, int k, double x);

}  // namespace nonclass
