#include "nonclass/depth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "nonclass/errors.hpp"
#include "nonclass/overloaded.hpp"
#include "nonclass/simplex.hpp"

namespace nonclass {

namespace {

constexpr double kVacuumAbsent = 1e-12;
// Bisection stops once the bracket is this fraction of tol_tau.
constexpr double kBracketFraction = 0.25;
constexpr int kAuditPoints = 5;
// Zoom grids: half-width in units of sqrt(tau), used when that is below this
// fraction of the main search radius.
constexpr double kZoomWidths = 6.0;
constexpr double kZoomTrigger = 0.25;

double negativity_threshold(double tol_r, double tau) { return tol_r / (std::numbers::pi * tau); }

// rho(0,0) = 0 for this component. Coherent superpositions compare the
// vacuum amplitude with the size of its cancelling parts, since a lone
// coherent state has a tiny but nonzero vacuum overlap.
bool vacuum_absent(const PureState& state) {
  return std::visit(Overloaded{[](const FockSuperposition& s) { return std::norm(s.coeffs()[0]) <= kVacuumAbsent; },
                               [](const CoherentSuperposition& s) {
                                 Complex amp{0.0, 0.0};
                                 double scale = 0.0;
                                 for (const auto& t : s.terms()) {
                                   const Complex part = t.coeff * std::exp(-0.5 * std::norm(t.alpha));
                                   amp += part;
                                   scale += std::abs(part);
                                 }
                                 return std::norm(amp) <= kVacuumAbsent * scale * scale;
                               },
                               [](const SqueezedState&) { return false; }},
                    state);
}

DepthReport rule_report(double tau_m, DepthMethod method) {
  DepthReport report;
  report.tau_m = tau_m;
  report.method = method;
  return report;
}

}  // namespace

std::string_view to_string(DepthMethod method) {
  switch (method) {
    case DepthMethod::numeric_bisection:
      return "numeric_bisection";
    case DepthMethod::analytic_gaussian:
      return "analytic_gaussian";
    case DepthMethod::rule_zero_vacuum:
      return "rule_zero_vacuum";
    case DepthMethod::rule_mixture_squeezed:
      return "rule_mixture_squeezed";
  }
  return "unknown";
}

double characteristic_amplitude(const StateSpec& spec) {
  double amplitude = 0.0;
  for (const auto& component : spec.components()) {
    const double a = std::visit(
        Overloaded{[](const FockSuperposition& s) { return std::sqrt(static_cast<double>(s.max_photon())); },
                   [](const CoherentSuperposition& s) {
                     double m = 0.0;
                     for (const auto& t : s.terms()) m = std::max(m, std::abs(t.alpha));
                     return m;
                   },
                   [](const SqueezedState& s) { return std::abs(s.alpha()) + 2.0 * std::exp(s.r()); }},
        component.state);
    amplitude = std::max(amplitude, a);
  }
  return amplitude;
}

double default_search_radius(const StateSpec& spec, double tau_hi) {
  return characteristic_amplitude(spec) + 4.0 * std::sqrt(tau_hi);
}

namespace {

struct Candidate {
  double value;
  Complex z;
  double spacing;
};

// Scans a res x res grid on the square of half-width `half` around `center`,
// appending its 8-neighbour local minima to `out`. Returns the best sample.
MinimumSample scan_grid(const PhaseSpaceEvaluator& evaluator, double tau, Complex center, double half, int res,
                        std::vector<Candidate>& out) {
  const double h = 2.0 * half / (res - 1);
  auto point = [&](int i, int j) { return center + Complex{-half + i * h, -half + j * h}; };
  std::vector<double> values(static_cast<std::size_t>(res) * res);
  auto at = [&](int i, int j) -> double& { return values[static_cast<std::size_t>(j) * res + i]; };

  MinimumSample best{tau, center, std::numeric_limits<double>::infinity()};
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const double v = evaluator.r(point(i, j), tau);
      if (std::isnan(v)) throw NumericError("R evaluated to NaN at tau " + std::to_string(tau));
      at(i, j) = v;
      if (v < best.r_min) best = {tau, point(i, j), v};
    }
  }
  if (best.r_min == -std::numeric_limits<double>::infinity()) return best;

  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const double v = at(i, j);
      bool is_min = true;
      for (int dj = -1; dj <= 1 && is_min; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          const int jj = j + dj;
          if ((di == 0 && dj == 0) || ii < 0 || jj < 0 || ii >= res || jj >= res) continue;
          if (at(ii, jj) < v) {
            is_min = false;
            break;
          }
        }
      }
      if (is_min) out.push_back({v, point(i, j), h});
    }
  }
  return best;
}

// Points around which R has structure on the sqrt(tau) scale.
std::vector<Complex> feature_centers(const StateSpec& spec) {
  std::vector<Complex> centers{Complex{}};
  for (const auto& c : spec.components()) {
    for (const Complex a : coherent_amplitudes(c.state)) centers.push_back(a);
  }
  return centers;
}

double fock_scale(const StateSpec& spec) {
  double n = 0.0;
  for (const auto& c : spec.components()) {
    if (const auto* f = std::get_if<FockSuperposition>(&c.state)) n = std::max(n, static_cast<double>(f->max_photon()));
  }
  return std::sqrt(n);
}

}  // namespace

MinimumSample global_min_r(const PhaseSpaceEvaluator& evaluator, double tau, const SearchBox& box) {
  if (!(tau > 0.0 && tau < 1.0)) throw DomainError("global_min_r needs 0 < tau < 1");
  if (box.coarse_resolution < 3) throw DomainError("coarse_resolution must be >= 3");
  const double radius = box.radius > 0.0 ? box.radius : default_search_radius(evaluator.spec());
  const int res = box.coarse_resolution;

  std::vector<Candidate> minima;
  MinimumSample best = scan_grid(evaluator, tau, {}, radius, res, minima);

  // At small tau the features shrink to ~sqrt(tau) and fall between the
  // coarse grid points; add finer grids around the places they sit.
  const double zoom = kZoomWidths * std::sqrt(tau) * (1.0 + fock_scale(evaluator.spec()));
  if (zoom < kZoomTrigger * radius) {
    const int zoom_res = std::max(3, res / 2 + ((res / 2) % 2 == 0 ? 1 : 0));
    for (const Complex c : feature_centers(evaluator.spec())) {
      const MinimumSample local = scan_grid(evaluator, tau, c, zoom, zoom_res, minima);
      if (local.r_min < best.r_min) best = local;
    }
  }
  if (best.r_min == -std::numeric_limits<double>::infinity()) return best;

  std::sort(minima.begin(), minima.end(), [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
  if (minima.size() > static_cast<std::size_t>(box.seeds)) minima.resize(static_cast<std::size_t>(box.seeds));

  auto objective = [&](Complex z) {
    const double v = evaluator.r(z, tau);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };
  for (const auto& seed : minima) {
    SimplexOptions options;
    options.initial_step = 0.5 * seed.spacing;
    options.f_tolerance = box.refine_tolerance;
    options.x_tolerance = 1e-9 * std::max(1.0, radius);
    const SimplexResult refined = minimize_simplex(objective, seed.z, options);
    if (refined.f < best.r_min) best = {tau, refined.x, refined.f};
  }
  return best;
}

MinimumSample global_min_r(const StateSpec& spec, double tau, const SearchBox& box) {
  return global_min_r(PhaseSpaceEvaluator(spec), tau, box);
}

DepthReport depth_gaussian(const SqueezedState& state) {
  return rule_report(squeezed_singular_tau(state.r()), DepthMethod::analytic_gaussian);
}

std::optional<DepthReport> depth_rules(const StateSpec& spec) {
  const auto components = spec.components();
  if (std::all_of(components.begin(), components.end(), [](const auto& c) { return vacuum_absent(c.state); })) {
    return rule_report(1.0, DepthMethod::rule_zero_vacuum);
  }
  if (!spec.is_mixture()) {
    if (const auto* squeezed = std::get_if<SqueezedState>(&spec.pure())) return depth_gaussian(*squeezed);
    // vacuum or a single coherent state: P is a delta function
    if (is_gaussian(spec.pure())) return rule_report(0.0, DepthMethod::analytic_gaussian);
    return std::nullopt;
  }

  const bool all_gaussian =
      std::all_of(components.begin(), components.end(), [](const auto& c) { return is_gaussian(c.state); });
  double deepest = 0.0;
  bool any_squeezed = false;
  for (const auto& c : components) {
    if (const auto* squeezed = std::get_if<SqueezedState>(&c.state); squeezed && squeezed->r() > 0.0) {
      any_squeezed = true;
      deepest = std::max(deepest, squeezed_singular_tau(squeezed->r()));
    }
  }
  if (all_gaussian) return rule_report(deepest, any_squeezed ? DepthMethod::rule_mixture_squeezed : DepthMethod::analytic_gaussian);
  return std::nullopt;
}

DepthReport nonclassical_depth(const StateSpec& spec, const DepthOptions& options) {
  if (!(options.tol_tau >= 1e-4 && options.tol_tau <= 1e-2)) throw DomainError("tol_tau must lie in [1e-4, 1e-2]");
  if (!(options.tol_R > 0.0)) throw DomainError("tol_R must be > 0");
  if (auto rule = depth_rules(spec)) return *rule;

  const PhaseSpaceEvaluator evaluator(spec);
  SearchBox box = options.box;
  if (box.radius <= 0.0) box.radius = default_search_radius(spec);

  DepthReport report;
  report.method = DepthMethod::numeric_bisection;
  report.tolerance = options.tol_tau;

  auto classical_at = [&](double tau) {
    const MinimumSample sample = global_min_r(evaluator, tau, box);
    report.min_trace.push_back(sample);
    return sample.r_min >= -negativity_threshold(options.tol_R, tau);
  };

  // A squeezed component makes R singular up to its own depth, which no
  // positive part can compensate; the search starts just above it.
  const double floor = evaluator.singular_tau();
  const double start = std::max(options.tol_tau, floor > 0.0 ? floor + 2e-9 : 0.0);
  const double top = 1.0 - options.tol_tau;
  double lo = start;
  double hi = top;

  if (classical_at(start)) {
    report.tau_m = floor;
    hi = start;
    lo = 0.0;
  } else if (!classical_at(top)) {
    report.tau_m = 1.0;
    report.boundary = true;
    lo = top;
    hi = 1.0;
  } else {
    while (hi - lo > kBracketFraction * options.tol_tau) {
      const double mid = 0.5 * (lo + hi);
      if (classical_at(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
      ++report.iterations;
    }
    report.tau_m = 0.5 * (lo + hi);
  }

  // Audit: below the bracket R must dip, above it R must not.
  for (int k = 1; k <= kAuditPoints; ++k) {
    const double tau = start + (top - start) * k / (kAuditPoints + 1);
    if (tau > lo && tau < hi) continue;
    const bool classical = classical_at(tau);
    if (classical != (tau >= hi)) report.non_monotone = true;
  }

  std::sort(report.min_trace.begin(), report.min_trace.end(),
            [](const MinimumSample& a, const MinimumSample& b) { return a.tau < b.tau; });

  if (report.non_monotone) {
    double last_failure = -1.0;
    for (const auto& s : report.min_trace) {
      if (s.r_min < -negativity_threshold(options.tol_R, s.tau)) last_failure = std::max(last_failure, s.tau);
    }
    double conservative = 1.0;
    for (const auto& s : report.min_trace) {
      if (s.tau > last_failure) {
        conservative = s.tau;
        break;
      }
    }
    report.tau_m = last_failure < 0.0 ? report.tau_m : conservative;
  }
  return report;
}

}  // namespace nonclass
