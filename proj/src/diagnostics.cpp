#include "nonclass/diagnostics.hpp"

#include <cmath>
#include <numbers>

#include "nonclass/errors.hpp"

namespace nonclass {

namespace {

struct Moments {
  double n = 0.0;
  double n2 = 0.0;
  Complex a;
  Complex a2;
};

Moments moments(const FockDensity& d) {
  Moments m;
  const auto dim = static_cast<Eigen::Index>(d.dim());
  for (Eigen::Index k = 0; k < dim; ++k) {
    const double p = d.rho(k, k).real();
    const double kk = static_cast<double>(k);
    m.n += kk * p;
    m.n2 += kk * kk * p;
    // <a> = sum_k sqrt(k) rho(k, k-1); <a^2> = sum_k sqrt(k (k-1)) rho(k, k-2).
    if (k >= 1) m.a += std::sqrt(kk) * d.rho(k, k - 1);
    if (k >= 2) m.a2 += std::sqrt(kk * (kk - 1.0)) * d.rho(k, k - 2);
  }
  return m;
}

QuadratureVariances variances_from(const Moments& m) {
  const double excess = m.n - std::norm(m.a);
  const Complex delta = m.a2 - m.a * m.a;
  const double base = 2.0 * excess + 1.0;
  QuadratureVariances v;
  v.var_x1 = 0.25 * (base + 2.0 * delta.real());
  v.var_x2 = 0.25 * (base - 2.0 * delta.real());
  v.best_var = 0.25 * (base - 2.0 * std::abs(delta));
  double angle = 0.5 * (std::arg(delta) + std::numbers::pi);
  if (angle >= std::numbers::pi) angle -= std::numbers::pi;
  v.best_angle = std::abs(delta) == 0.0 ? 0.0 : angle;
  return v;
}

}  // namespace

double mean_photon_number(const StateSpec& spec) {
  double n = 0.0;
  for (const auto& c : spec.components()) n += c.weight * mean_photon_number(c.state);
  return n;
}

double mandel_q(const StateSpec& spec) {
  const Moments m = moments(to_fock_density(spec));
  if (m.n <= 0.0) throw DomainError("Mandel q is undefined for the vacuum (<n> = 0)");
  return (m.n2 - m.n * m.n) / m.n - 1.0;
}

double impurity(const StateSpec& spec) {
  const FockDensity d = to_fock_density(spec);
  return d.trace() - d.purity();
}

QuadratureVariances quadrature_variances(const StateSpec& spec) {
  return variances_from(moments(to_fock_density(spec)));
}

DiagnosticsReport diagnostics(const StateSpec& spec) {
  const FockDensity d = to_fock_density(spec);
  const Moments m = moments(d);
  const QuadratureVariances v = variances_from(m);
  DiagnosticsReport report;
  if (m.n > 0.0) report.mandel_q = (m.n2 - m.n * m.n) / m.n - 1.0;
  report.impurity_D = d.trace() - d.purity();
  report.mean_n = mean_photon_number(spec);
  report.var_x1 = v.var_x1;
  report.var_x2 = v.var_x2;
  report.min_quadrature_var_angle = v.best_angle;
  report.best_var = v.best_var;
  report.tail_mass = d.tail_mass;
  return report;
}

}  // namespace nonclass
