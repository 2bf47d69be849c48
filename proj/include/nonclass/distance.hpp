#pragma once

// Distance-type nonclassicality of pure states,
//
//   d_m = min_beta (1 - |<psi|beta>|^2) = 1 - pi max_beta Q(beta),
//
// the pure-state Hilbert-Schmidt and Bures-Uhlmann distances, and the closed
// forms known for number, squeezed, vacuum/one-photon and even cat states.

#include <span>
#include <string_view>
#include <vector>

#include "nonclass/states.hpp"

namespace nonclass {

enum class DistanceMethod { numeric, analytic_number, analytic_squeezed, analytic_vac_one, analytic_cat_small };

std::string_view to_string(DistanceMethod method);

struct AscentSample {
  Complex seed;
  Complex beta;
  double q = 0.0;
};

struct QMaximum {
  Complex beta_star;
  double q_max = 0.0;
  /// One entry per seed, in seed order.
  std::vector<AscentSample> trace;
};

struct DistanceReport {
  double d_m = 0.0;
  Complex beta_star;
  double q_max = 0.0;
  int seeds_tried = 0;
  DistanceMethod method = DistanceMethod::numeric;
  std::vector<AscentSample> trace;
};

/// Purity gate Tr rho^2 >= 1 - 1e-9. Returns the pure state, or throws
/// UnsupportedStateError (the mixed-state measure needs a different
/// reference set of classical states).
const PureState& require_pure(const StateSpec& spec);

/// Multistart simplex ascent of Q from the origin, every coherent amplitude
/// in the state, eight points on the ring |beta| = sqrt(<n>), and
/// `extra_seeds`. q_max is at least Q at every seed.
QMaximum max_q(const StateSpec& spec, std::span<const Complex> extra_seeds = {});

/// Closed form when the state belongs to a solved family, max_q otherwise.
DistanceReport nonclassicality_distance(const StateSpec& spec, std::span<const Complex> extra_seeds = {});

/// The multistart search regardless of closed forms.
DistanceReport numeric_distance(const StateSpec& spec, std::span<const Complex> extra_seeds = {});

enum class ClosedFormFamily {
  number,               ///< parameter n: 1 - n^n e^{-n} / n!
  squeezed,             ///< parameter r: 1 - sech r
  vac_one,              ///< parameter xi: sqrt(xi)|0> + sqrt(1-xi) e^{i phi}|1>
  cat_even_small,       ///< parameter alpha in [0, 1]: 1 - sech(alpha^2)
  cat_even_asymptotic,  ///< parameter alpha > 1: (1 - e^{-2 alpha^2}) / 2
};

/// Throws DomainError naming the violated constraint.
double d_m_closed_form(ClosedFormFamily family, double parameter);

/// |beta*|^2 for the vacuum/one-photon superposition,
/// (2 - xi - sqrt(xi (4 - 3 xi))) / (2 (1 - xi)) = 2 (1 - xi) / (2 - xi + sqrt(xi (4 - 3 xi))).
double vac_one_argmax_norm(double xi);

/// d_m of a squeezed state as a function of its depth tau_m in [0, 1/2):
/// 1 - sqrt((1 - 2 tau_m) / (1 - tau_m)^2).
double gaussian_bijection(double tau_m);

/// <a|b> for pure states. Coherent/Fock/squeezed pairs use exact overlaps;
/// squeezed/squeezed and Fock/squeezed pairs use a 1e-15 number-basis tail.
Complex inner_product(const PureState& a, const PureState& b);

/// sqrt(2 - 2 |<a|b>|^2). Throws UnsupportedStateError for mixed input; use
/// hs_distance_mixed then.
double hs_distance_pure(const StateSpec& a, const StateSpec& b);

/// sqrt(2 - 2 |<a|b>|).
double bu_distance_pure(const StateSpec& a, const StateSpec& b);

/// sqrt(Tr (rho - sigma)^2) on the common (padded) truncation.
double hs_distance_mixed(const FockDensity& a, const FockDensity& b);

}  // namespace nonclass
