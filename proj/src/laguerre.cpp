#include "nonclass/laguerre.hpp"

#include "nonclass/errors.hpp"

namespace nonclass {

double laguerre(int n, double k, double x) {
  if (n < 0) throw DomainError("Laguerre degree must be >= 0");
  if (n == 0) return 1.0;
  double previous = 1.0;
  double current = 1.0 + k - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + k - x) * current - (j + k) * previous) / (j + 1.0);
    previous = current;
    current = next;
  }
  return current;
}

std::vector<ScaledValue> laguerre_sequence(int n_max, int k, double x) {
  if (n_max < 0 || k < 0) throw DomainError("Laguerre sequence needs n_max >= 0 and k >= 0");
  std::vector<ScaledValue> out;
  out.reserve(static_cast<std::size_t>(n_max) + 1);

  double log_scale = 0.0;
  double previous = 1.0;
  out.push_back({previous, log_scale});
  if (n_max == 0) return out;
  double current = 1.0 + k - x;
  out.push_back({current, log_scale});

  for (int j = 1; j < n_max; ++j) {
    double next = ((2.0 * j + 1.0 + k - x) * current - (j + k) * previous) / (j + 1.0);
    previous = current;
    current = next;
    const double mag = std::max(std::abs(current), std::abs(previous));
    if (mag > 1e150) {
      previous /= mag;
      current /= mag;
      log_scale += std::log(mag);
    }
    out.push_back({current, log_scale});
  }
  return out;
}

}  // namespace nonclass
