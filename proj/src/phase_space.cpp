#include "nonclass/phase_space.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "nonclass/errors.hpp"
#include "nonclass/laguerre.hpp"
#include "nonclass/overloaded.hpp"

namespace nonclass {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRealityTolerance = 1e-10;
constexpr double kSingularMargin = 1e-9;
constexpr double kMaxLog = 709.0;

// Sum of complex terms given as unit * exp(log_mag), rescaled to the largest
// magnitude seen so far.
class LogSum {
 public:
  void add(double log_mag, Complex unit) {
    if (log_mag == -std::numeric_limits<double>::infinity()) return;
    if (log_mag > scale_) {
      const double factor = std::exp(scale_ - log_mag);
      sum_ *= factor;
      abs_sum_ *= factor;
      scale_ = log_mag;
    }
    const double w = std::exp(log_mag - scale_);
    sum_ += unit * w;
    abs_sum_ += w;
  }

  bool empty() const { return scale_ == -std::numeric_limits<double>::infinity(); }
  double scale() const { return scale_; }
  Complex sum() const { return sum_; }
  double abs_sum() const { return abs_sum_; }

 private:
  double scale_ = -std::numeric_limits<double>::infinity();
  Complex sum_{0.0, 0.0};
  double abs_sum_ = 0.0;
};

void check_reality(const LogSum& acc, double log_prefactor, const char* where) {
  const double scale = std::exp(std::min(acc.scale() + log_prefactor, kMaxLog));
  const double residue = std::abs(acc.sum().imag()) * scale;
  const double magnitude = acc.abs_sum() * scale;
  if (residue > kRealityTolerance * std::max(1.0, magnitude)) {
    throw NumericError(std::string(where) + ": imaginary residue " + std::to_string(residue) +
                       " exceeds tolerance (density not Hermitian?)");
  }
}

void check_open_tau(double tau, const char* where) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw DomainError(std::string(where) + " needs 0 < tau < 1, got " + std::to_string(tau));
  }
}

void check_tau(double tau) {
  if (!(tau > 0.0 && tau <= 1.0)) throw DomainError("tau must lie in (0, 1], got " + std::to_string(tau));
}

// <n|beta>^* = <beta|n> = e^{-|beta|^2/2} (beta^*)^n / sqrt(n!)
Complex bra_beta_ket_n(Complex beta, std::size_t n) {
  if (beta == Complex{}) return n == 0 ? Complex{1.0, 0.0} : Complex{};
  const double nd = static_cast<double>(n);
  return std::exp(-0.5 * std::norm(beta) + nd * std::log(std::conj(beta)) - 0.5 * std::lgamma(nd + 1.0));
}

double q_fock_density(const FockDensity& density, Complex beta) {
  const auto dim = static_cast<Eigen::Index>(density.dim());
  Eigen::VectorXcd ket(dim);  // <n|beta>
  for (Eigen::Index n = 0; n < dim; ++n) ket(n) = std::conj(bra_beta_ket_n(beta, static_cast<std::size_t>(n)));
  return (ket.adjoint() * density.rho * ket)(0).real() / kPi;
}

}  // namespace

void GridSpec::validate() const {
  if (!(x_min < x_max) || !(y_min < y_max)) throw DomainError("grid window must satisfy x_min < x_max, y_min < y_max");
  if (resolution < 2) throw DomainError("grid resolution must be >= 2");
}

double r_fock(const FockDensity& density, Complex z, double tau) {
  check_open_tau(tau, "r_fock");
  const auto dim = static_cast<int>(density.dim());
  const double radius = std::abs(z);
  const double theta = std::arg(z);
  const double y = radius * radius / (tau * (1.0 - tau));
  const double log_radius = std::log(radius);
  const double log_tau = std::log(tau);
  const double log_one_minus_tau = std::log1p(-tau);

  std::vector<double> half_log_factorial(static_cast<std::size_t>(dim));
  for (int n = 0; n < dim; ++n) half_log_factorial[static_cast<std::size_t>(n)] = 0.5 * std::lgamma(n + 1.0);

  LogSum acc;
  for (int k = 0; k < dim; ++k) {
    if (k > 0 && radius == 0.0) break;
    const auto lag = laguerre_sequence(dim - 1 - k, k, y);
    const Complex phase = std::polar(1.0, k * theta);
    for (int n = 0; n + k < dim; ++n) {
      const int m = n + k;
      Complex coef = density.rho(n, m) * phase;
      if (k > 0) coef += density.rho(m, n) * std::conj(phase);
      const ScaledValue& l = lag[static_cast<std::size_t>(n)];
      if (coef == Complex{} || l.mantissa == 0.0) continue;

      const double log_a = half_log_factorial[static_cast<std::size_t>(n)] -
                           half_log_factorial[static_cast<std::size_t>(m)] + n * log_one_minus_tau - m * log_tau +
                           (k > 0 ? k * log_radius : 0.0) + l.log_abs();
      const double sign = ((n % 2 == 1) ? -1.0 : 1.0) * l.sign();
      const double coef_abs = std::abs(coef);
      acc.add(log_a + std::log(coef_abs), sign * coef / coef_abs);
    }
  }
  if (acc.empty()) return 0.0;

  const double log_prefactor = -radius * radius / tau - std::log(kPi * tau);
  check_reality(acc, log_prefactor, "r_fock");
  const double log_total = acc.scale() + log_prefactor;
  if (log_total > kMaxLog) {
    throw NumericError("r_fock: accumulated terms overflow (log magnitude " + std::to_string(log_total) + " at tau " +
                       std::to_string(tau) + ", dim " + std::to_string(dim) + ")");
  }
  return acc.sum().real() * std::exp(log_total);
}

double r_coherent(const CoherentSuperposition& state, Complex z, double tau) {
  check_tau(tau);
  LogSum acc;
  for (const auto& ti : state.terms()) {
    for (const auto& tj : state.terms()) {
      const Complex exponent =
          -0.5 * (std::norm(ti.alpha) + std::norm(tj.alpha) - 2.0 * ti.alpha * std::conj(tj.alpha)) -
          (z - ti.alpha) * std::conj(z - tj.alpha) / tau;
      const Complex coef = ti.coeff * std::conj(tj.coeff);
      const double coef_abs = std::abs(coef);
      acc.add(std::log(coef_abs) + exponent.real(), coef / coef_abs * std::polar(1.0, exponent.imag()));
    }
  }
  const double log_prefactor = -std::log(kPi * tau);
  check_reality(acc, log_prefactor, "r_coherent");
  const double re = acc.sum().real();
  if (re == 0.0) return 0.0;
  return re * std::exp(acc.scale() + log_prefactor);
}

double squeezed_singular_tau(double r) {
  const double t = std::tanh(r);
  return t / (1.0 + t);
}

double r_squeezed(const SqueezedState& state, Complex z, double tau) {
  check_tau(tau);
  const double tau_singular = squeezed_singular_tau(state.r());
  if (tau <= tau_singular + kSingularMargin) {
    throw SingularRegimeError("R-function of a squeezed state (r = " + std::to_string(state.r()) +
                                  ") is singular for tau <= " + std::to_string(tau_singular),
                              tau, tau_singular);
  }
  const double r = state.r();
  const double t = std::tanh(r);
  const double c = std::cos(state.theta());
  const double s = std::sin(state.theta());
  const double one_minus_t = 2.0 / (std::exp(2.0 * r) + 1.0);
  // 1 -+ t cos(theta) without cancellation near |cos(theta)| = 1
  const double one_minus_tc = (1.0 - c) + c * one_minus_t;
  const double one_plus_tc = (1.0 + c) - c * one_minus_t;
  const double half_cosh2 = 0.5 * std::cosh(r) * std::cosh(r);

  // Covariance of R in (Re, Im): Q covariance (2M)^{-1} minus (1 - tau)/2.
  const double sxx = one_plus_tc * half_cosh2 - 0.5 * (1.0 - tau);
  const double syy = one_minus_tc * half_cosh2 - 0.5 * (1.0 - tau);
  const double sxy = t * s * half_cosh2;
  const double det = sxx * syy - sxy * sxy;

  const Complex v = z - state.alpha();
  const double x = v.real();
  const double y = v.imag();
  const double quad = (syy * x * x - 2.0 * sxy * x * y + sxx * y * y) / det;
  return std::exp(-0.5 * quad) / (2.0 * kPi * std::sqrt(det));
}

Complex coherent_projection(const PureState& state, Complex beta) {
  return std::visit(
      Overloaded{[&](const FockSuperposition& s) {
                   Complex amp{0.0, 0.0};
                   const auto c = s.coeffs();
                   for (std::size_t n = 0; n < c.size(); ++n) {
                     if (c[n] != Complex{}) amp += c[n] * bra_beta_ket_n(beta, n);
                   }
                   return amp;
                 },
                 [&](const CoherentSuperposition& s) {
                   Complex amp{0.0, 0.0};
                   for (const auto& t : s.terms()) amp += t.coeff * coherent_overlap(beta, t.alpha);
                   return amp;
                 },
                 [&](const SqueezedState& s) {
                   // <beta|alpha,zeta> = e^{-|beta|^2/2} psi_0 exp((alpha - nu alpha^*) beta^* + nu beta^*^2 / 2)
                   const Complex alpha = s.alpha();
                   const Complex nu = s.nu();
                   const Complex bc = std::conj(beta);
                   const Complex exponent = -0.5 * std::norm(beta) - 0.5 * std::norm(alpha) +
                                            0.5 * nu * std::conj(alpha) * std::conj(alpha) +
                                            (alpha - nu * std::conj(alpha)) * bc + 0.5 * nu * bc * bc;
                   return std::exp(exponent) / std::sqrt(std::cosh(s.r()));
                 }},
      state);
}

namespace {

double q_pure(const PureState& state, Complex beta) {
  if (const auto* squeezed = std::get_if<SqueezedState>(&state)) {
    const double r = squeezed->r();
    const double t = std::tanh(r);
    const double c = std::cos(squeezed->theta());
    const double s = std::sin(squeezed->theta());
    const Complex v = beta - squeezed->alpha();
    const double x = v.real();
    const double y = v.imag();
    return std::exp(-(1.0 - t * c) * x * x - (1.0 + t * c) * y * y + 2.0 * t * s * x * y) / (std::cosh(r) * kPi);
  }
  return std::norm(coherent_projection(state, beta)) / kPi;
}

}  // namespace

double q_function(const StateSpec& spec, Complex beta) {
  double q = 0.0;
  for (const auto& component : spec.components()) q += component.weight * q_pure(component.state, beta);
  return q;
}

// ---------------------------------------------------------------------------

PhaseSpaceEvaluator::PhaseSpaceEvaluator(const StateSpec& spec) : spec_(spec) {
  std::size_t dim = 0;
  for (const auto& component : spec_.components()) {
    if (const auto* fock = std::get_if<FockSuperposition>(&component.state)) {
      dim = std::max(dim, fock->coeffs().size());
    }
  }
  if (dim > 0) {
    FockDensity density;
    density.rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (const auto& component : spec_.components()) {
      if (const auto* fock = std::get_if<FockSuperposition>(&component.state)) {
        Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
        const auto c = fock->coeffs();
        for (std::size_t n = 0; n < c.size(); ++n) v(static_cast<Eigen::Index>(n)) = c[n];
        density.rho.noalias() += component.weight * (v * v.adjoint());
      }
    }
    fock_part_ = std::move(density);
  }
  for (const auto& component : spec_.components()) {
    if (std::holds_alternative<FockSuperposition>(component.state)) continue;
    other_parts_.push_back(component);
    if (const auto* squeezed = std::get_if<SqueezedState>(&component.state)) {
      singular_tau_ = std::max(singular_tau_, squeezed_singular_tau(squeezed->r()));
    }
  }
}

double PhaseSpaceEvaluator::r(Complex z, double tau) const {
  check_tau(tau);
  if (tau == 1.0) return q(z);
  double value = 0.0;
  if (fock_part_) value += r_fock(*fock_part_, z, tau);
  for (const auto& part : other_parts_) {
    if (const auto* coherent = std::get_if<CoherentSuperposition>(&part.state)) {
      value += part.weight * r_coherent(*coherent, z, tau);
    } else {
      value += part.weight * r_squeezed(std::get<SqueezedState>(part.state), z, tau);
    }
  }
  return value;
}

double PhaseSpaceEvaluator::q(Complex beta) const {
  double value = 0.0;
  if (fock_part_) value += q_fock_density(*fock_part_, beta);
  for (const auto& part : other_parts_) value += part.weight * q_pure(part.state, beta);
  return value;
}

double r_function(const StateSpec& spec, const RQuery& query) { return PhaseSpaceEvaluator(spec).r(query.z, query.tau); }

RGrid r_grid(const StateSpec& spec, double tau, const GridSpec& grid) {
  check_tau(tau);
  grid.validate();
  const PhaseSpaceEvaluator evaluator(spec);
  RGrid out;
  out.grid = grid;
  out.tau = tau;
  out.values.reserve(static_cast<std::size_t>(grid.resolution) * grid.resolution);
  for (int j = 0; j < grid.resolution; ++j) {
    for (int i = 0; i < grid.resolution; ++i) out.values.push_back(evaluator.r({grid.x(i), grid.y(j)}, tau));
  }
  return out;
}

void write_grid_csv(std::ostream& out, const RGrid& grid) {
  out << "x,y,value\n";
  char line[96];
  for (int j = 0; j < grid.grid.resolution; ++j) {
    for (int i = 0; i < grid.grid.resolution; ++i) {
      std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", grid.grid.x(i), grid.grid.y(j), grid.at(i, j));
      out << line;
    }
  }
}

}  // namespace nonclass
