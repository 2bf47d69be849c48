#include "nonclass/distance.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nonclass/errors.hpp"
#include "nonclass/overloaded.hpp"
#include "nonclass/phase_space.hpp"
#include "nonclass/simplex.hpp"

namespace nonclass {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPurityGate = 1e-9;
constexpr int kRingSeeds = 8;
constexpr double kOverlapTail = 1e-14;

double q_pure(const PureState& state, Complex beta) { return q_function(StateSpec(state), beta); }

DistanceReport analytic_report(DistanceMethod method, Complex beta_star, double q_max) {
  DistanceReport report;
  report.method = method;
  report.beta_star = beta_star;
  report.q_max = q_max;
  report.d_m = 1.0 - kPi * q_max;
  report.trace.push_back({beta_star, beta_star, q_max});
  report.seeds_tried = 0;
  return report;
}

std::vector<std::size_t> nonzero_indices(std::span<const Complex> coeffs) {
  std::vector<std::size_t> out;
  for (std::size_t n = 0; n < coeffs.size(); ++n) {
    if (coeffs[n] != Complex{}) out.push_back(n);
  }
  return out;
}

// Number state |n>: Q peaks on the ring |beta|^2 = n at n^n e^{-n} / (n! pi).
double number_state_peak(double n) {
  if (n == 0.0) return 1.0;
  return std::exp(n * std::log(n) - n - std::lgamma(n + 1.0));
}

std::optional<DistanceReport> closed_form_report(const PureState& state) {
  if (const auto* squeezed = std::get_if<SqueezedState>(&state)) {
    return analytic_report(DistanceMethod::analytic_squeezed, squeezed->alpha(), 1.0 / (kPi * std::cosh(squeezed->r())));
  }
  if (const auto* fock = std::get_if<FockSuperposition>(&state)) {
    const auto coeffs = fock->coeffs();
    const auto support = nonzero_indices(coeffs);
    if (support.size() == 1) {
      const double n = static_cast<double>(support.front());
      return analytic_report(DistanceMethod::analytic_number, Complex{std::sqrt(n), 0.0}, number_state_peak(n) / kPi);
    }
    if (support.size() == 2 && support[0] == 0 && support[1] == 1) {
      const double xi = std::norm(coeffs[0]);
      const double phi = std::arg(coeffs[1]) - std::arg(coeffs[0]);
      const double b = std::sqrt(vac_one_argmax_norm(xi));
      const double q =
          std::exp(-b * b) * (xi + (1.0 - xi) * b * b + 2.0 * std::sqrt(xi * (1.0 - xi)) * b) / kPi;
      return analytic_report(DistanceMethod::analytic_vac_one, std::polar(b, phi), q);
    }
    return std::nullopt;
  }
  const auto& coherent = std::get<CoherentSuperposition>(state);
  const auto terms = coherent.terms();
  if (terms.size() == 1) {
    return analytic_report(DistanceMethod::analytic_squeezed, terms[0].alpha, 1.0 / kPi);
  }
  if (terms.size() == 2) {
    const Complex a = terms[1].alpha;
    const double amplitude = std::abs(a);
    const bool opposite = std::abs(terms[0].alpha + a) <= 1e-12 * amplitude;
    const bool even = std::abs(terms[0].coeff - terms[1].coeff) <= 1e-12 * std::abs(terms[0].coeff);
    if (opposite && even && amplitude <= 1.0) {
      return analytic_report(DistanceMethod::analytic_cat_small, Complex{},
                             1.0 / (kPi * std::cosh(amplitude * amplitude)));
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view to_string(DistanceMethod method) {
  switch (method) {
    case DistanceMethod::numeric:
      return "numeric";
    case DistanceMethod::analytic_number:
      return "analytic_number";
    case DistanceMethod::analytic_squeezed:
      return "analytic_squeezed";
    case DistanceMethod::analytic_vac_one:
      return "analytic_vac_one";
    case DistanceMethod::analytic_cat_small:
      return "analytic_cat_small";
  }
  return "unknown";
}

const PureState& require_pure(const StateSpec& spec) {
  if (!spec.is_mixture()) return spec.pure();
  const FockDensity density = to_fock_density(spec);
  if (density.purity() >= 1.0 - kPurityGate) return spec.components().front().state;
  throw UnsupportedStateError(
      "distance-type degree is defined for pure states only; this mixture has purity " +
      std::to_string(density.purity()) + " (mixed states need an extended classical reference set, not implemented)");
}

QMaximum max_q(const StateSpec& spec, std::span<const Complex> extra_seeds) {
  const PureState& state = require_pure(spec);

  std::vector<Complex> seeds{Complex{}};
  for (const Complex a : coherent_amplitudes(state)) seeds.push_back(a);
  const double ring = std::sqrt(mean_photon_number(state));
  if (ring > 0.0) {
    for (int k = 0; k < kRingSeeds; ++k) seeds.push_back(std::polar(ring, 2.0 * kPi * k / kRingSeeds));
  }
  seeds.insert(seeds.end(), extra_seeds.begin(), extra_seeds.end());

  SimplexOptions options;
  options.initial_step = 0.25;
  options.f_tolerance = 1e-16;
  options.x_tolerance = 1e-10;
  options.max_evaluations = 6000;
  options.restarts = 2;
  auto objective = [&](Complex beta) { return -q_pure(state, beta); };

  QMaximum out;
  out.q_max = -1.0;
  for (const Complex seed : seeds) {
    const double q_seed = q_pure(state, seed);
    const SimplexResult ascent = minimize_simplex(objective, seed, options);
    AscentSample sample{seed, ascent.x, -ascent.f};
    if (sample.q < q_seed) sample = {seed, seed, q_seed};
    out.trace.push_back(sample);
    if (sample.q > out.q_max) {
      out.q_max = sample.q;
      out.beta_star = sample.beta;
    }
  }
  return out;
}

DistanceReport numeric_distance(const StateSpec& spec, std::span<const Complex> extra_seeds) {
  QMaximum best = max_q(spec, extra_seeds);
  DistanceReport report;
  report.method = DistanceMethod::numeric;
  report.q_max = best.q_max;
  report.beta_star = best.beta_star;
  report.d_m = 1.0 - kPi * best.q_max;
  report.seeds_tried = static_cast<int>(best.trace.size());
  report.trace = std::move(best.trace);
  return report;
}

DistanceReport nonclassicality_distance(const StateSpec& spec, std::span<const Complex> extra_seeds) {
  const PureState& state = require_pure(spec);
  if (auto report = closed_form_report(state)) return *report;
  return numeric_distance(spec, extra_seeds);
}

double vac_one_argmax_norm(double xi) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("vac_one closed form requires 0 <= xi <= 1");
  return 2.0 * (1.0 - xi) / (2.0 - xi + std::sqrt(xi * (4.0 - 3.0 * xi)));
}

double d_m_closed_form(ClosedFormFamily family, double parameter) {
  switch (family) {
    case ClosedFormFamily::number:
      if (!(parameter >= 0.0) || parameter != std::floor(parameter)) {
        throw DomainError("number-state closed form requires an integer n >= 0");
      }
      return 1.0 - number_state_peak(parameter);
    case ClosedFormFamily::squeezed:
      if (!(parameter >= 0.0)) throw DomainError("squeezed closed form requires r >= 0");
      return 1.0 - 1.0 / std::cosh(parameter);
    case ClosedFormFamily::vac_one: {
      const double xi = parameter;
      const double b2 = vac_one_argmax_norm(xi);
      return 1.0 - std::exp(-b2) * (1.0 + 0.5 * std::sqrt(xi * (4.0 - 3.0 * xi)) - 0.5 * xi);
    }
    case ClosedFormFamily::cat_even_small:
      if (!(parameter >= 0.0 && parameter <= 1.0)) {
        throw DomainError("even-cat closed form requires 0 <= alpha <= 1 (maximum of Q at the origin)");
      }
      return 1.0 - 1.0 / std::cosh(parameter * parameter);
    case ClosedFormFamily::cat_even_asymptotic:
      if (!(parameter > 1.0)) throw DomainError("even-cat asymptotic form requires alpha > 1");
      return 0.5 * (1.0 - std::exp(-2.0 * parameter * parameter));
  }
  throw DomainError("unknown closed-form family");
}

double gaussian_bijection(double tau_m) {
  if (!(tau_m >= 0.0 && tau_m < 0.5)) throw DomainError("gaussian_bijection requires 0 <= tau_m < 1/2");
  return 1.0 - std::sqrt(1.0 - 2.0 * tau_m) / (1.0 - tau_m);
}

Complex inner_product(const PureState& a, const PureState& b) {
  // <a|b> via number-basis components when either side is a Fock superposition
  // (exact: the sum is finite).
  if (const auto* fa = std::get_if<FockSuperposition>(&a)) {
    const auto ca = fa->coeffs();
    const auto cb = leading_fock_amplitudes(b, ca.size());
    Complex sum{0.0, 0.0};
    for (std::size_t n = 0; n < ca.size(); ++n) sum += std::conj(ca[n]) * cb[n];
    return sum;
  }
  if (std::holds_alternative<FockSuperposition>(b)) return std::conj(inner_product(b, a));

  if (const auto* ca = std::get_if<CoherentSuperposition>(&a)) {
    Complex sum{0.0, 0.0};
    for (const auto& t : ca->terms()) sum += std::conj(t.coeff) * coherent_projection(b, t.alpha);
    return sum;
  }
  if (std::holds_alternative<CoherentSuperposition>(b)) return std::conj(inner_product(b, a));

  // squeezed/squeezed: truncate both at the larger cutoff; the neglected part
  // is bounded by sqrt(tail_a tail_b).
  const std::size_t count =
      std::max(fock_amplitudes(a, kOverlapTail).amplitudes.size(), fock_amplitudes(b, kOverlapTail).amplitudes.size());
  const auto va = leading_fock_amplitudes(a, count);
  const auto vb = leading_fock_amplitudes(b, count);
  Complex sum{0.0, 0.0};
  for (std::size_t n = 0; n < count; ++n) sum += std::conj(va[n]) * vb[n];
  return sum;
}

namespace {

double pure_overlap_abs(const StateSpec& a, const StateSpec& b, const char* what) {
  if (a.is_mixture() || b.is_mixture()) {
    throw UnsupportedStateError(std::string(what) + " needs pure states; use hs_distance_mixed for mixtures");
  }
  return std::min(std::abs(inner_product(a.pure(), b.pure())), 1.0);
}

}  // namespace

double hs_distance_pure(const StateSpec& a, const StateSpec& b) {
  const double overlap = pure_overlap_abs(a, b, "hs_distance_pure");
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap * overlap));
}

double bu_distance_pure(const StateSpec& a, const StateSpec& b) {
  const double overlap = pure_overlap_abs(a, b, "bu_distance_pure");
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * overlap));
}

double hs_distance_mixed(const FockDensity& a, const FockDensity& b) {
  const std::size_t dim = std::max(a.dim(), b.dim());
  const FockDensity pa = padded(a, dim);
  const FockDensity pb = padded(b, dim);
  return std::sqrt((pa.rho - pb.rho).cwiseAbs2().sum());
}

}  // namespace nonclass
