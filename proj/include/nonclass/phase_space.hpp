#pragma once

// The tau-parametrized family of Gaussian convolutions of the P-function,
//
//   R(z; tau) = (1 / (pi tau)) \int d^2w exp(-|z - w|^2 / tau) P(w),
//
// which is the Wigner function at tau = 1/2 and the Husimi Q-function at
// tau = 1.

#include <iosfwd>
#include <optional>
#include <vector>

#include "nonclass/states.hpp"

namespace nonclass {

struct RQuery {
  Complex z;
  double tau;
};

struct GridSpec {
  double x_min = -4.0;
  double x_max = 4.0;
  double y_min = -4.0;
  double y_max = 4.0;
  int resolution = 101;

  /// Throws DomainError on an empty window or resolution < 2.
  void validate() const;
  double x(int i) const { return x_min + (x_max - x_min) * i / (resolution - 1); }
  double y(int j) const { return y_min + (y_max - y_min) * j / (resolution - 1); }
};

/// Number-basis evaluation, 0 < tau < 1:
///   R = e^{-|z|^2/tau} / (pi tau) sum_{n,m} rho(n,m) e^{i(m-n) theta} A_{n,m},
///   A_{n,m} = sqrt(n!/m!) (tau-1)^n tau^{-m} |z|^{m-n} L_n^{(m-n)}(|z|^2 / (tau (1-tau))),  n <= m,
/// with A symmetric. Terms are accumulated in log space. For a truncated
/// infinite-support state the neglected tail is weighted by ((1-tau)/tau)^N,
/// so below tau = 1/2 only finite Fock superpositions are reliable here.
/// Throws DomainError outside (0, 1) and NumericError on overflow or a
/// non-real result.
double r_fock(const FockDensity& density, Complex z, double tau);

/// Closed double sum over coherent components, 0 < tau <= 1:
///   R = (1/(pi tau)) sum_{ij} c_i c_j^* exp(-(|a_i|^2 + |a_j|^2 - 2 a_i a_j^*)/2)
///                                    exp(-(z - a_i)(z^* - a_j^*)/tau).
/// Returns +-infinity when the true value exceeds double range (tiny tau).
double r_coherent(const CoherentSuperposition& state, Complex z, double tau);

/// Depth of a squeezed state, tanh r / (1 + tanh r). Below it R is not a function.
double squeezed_singular_tau(double r);

/// Gaussian closed form for D(alpha)S(zeta)|0>: the Q covariance narrowed by
/// (1 - tau)/2 per quadrature. Throws SingularRegimeError for
/// tau <= squeezed_singular_tau(r) + 1e-9.
double r_squeezed(const SqueezedState& state, Complex z, double tau);

/// <beta|psi> for a pure state (exact; closed form for squeezed states).
Complex coherent_projection(const PureState& state, Complex beta);

/// Husimi Q = <beta|rho|beta> / pi; squeezed components use the closed form.
double q_function(const StateSpec& spec, Complex beta);

/// Evaluates R and Q for one spec, choosing per component the coherent-basis
/// sum, the squeezed closed form, or the number-basis sum (all Fock
/// components are folded into one density).
class PhaseSpaceEvaluator {
 public:
  explicit PhaseSpaceEvaluator(const StateSpec& spec);

  /// 0 < tau <= 1; tau == 1 is the Q-function.
  double r(Complex z, double tau) const;
  double q(Complex beta) const;

  /// Largest squeezed-component depth; R is singular at or below it. 0 if none.
  double singular_tau() const { return singular_tau_; }
  const StateSpec& spec() const { return spec_; }

 private:
  StateSpec spec_;
  std::optional<FockDensity> fock_part_;
  std::vector<MixtureComponent> other_parts_;
  double singular_tau_ = 0.0;
};

double r_function(const StateSpec& spec, const RQuery& query);

/// Row-major samples: values[j * resolution + i] at (grid.x(i), grid.y(j)).
struct RGrid {
  GridSpec grid;
  double tau = 0.5;
  std::vector<double> values;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.resolution + i]; }
};

RGrid r_grid(const StateSpec& spec, double tau, const GridSpec& grid);

/// CSV `x,y,value`, row-major, 17 significant digits.
void write_grid_csv(std::ostream& out, const RGrid& grid);

}  // namespace nonclass
