#pragma once

// Single-mode state descriptions and their truncated number-basis densities.
//
// All state types are immutable once built. Constructors validate their
// input and renormalize it; `renormalized()` reports whether the supplied
// norm was off by more than 1e-6.

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace nonclass {

using Complex = std::complex<double>;

/// Throws DomainError unless both parts are finite. `what` names the field.
Complex checked_amplitude(Complex value, const char* what);

/// Pure state sum_n c_n |n>.
class FockSuperposition {
 public:
  /// Normalizes `coeffs`. Throws DomainError if empty, all zero or non-finite.
  explicit FockSuperposition(std::vector<Complex> coeffs);

  static FockSuperposition number_state(std::size_t n);

  std::span<const Complex> coeffs() const { return coeffs_; }
  std::size_t max_photon() const { return coeffs_.size() - 1; }
  bool renormalized() const { return renormalized_; }

 private:
  std::vector<Complex> coeffs_;
  bool renormalized_ = false;
};

struct CoherentTerm {
  Complex coeff;
  Complex alpha;
};

/// <beta|alpha> for coherent states.
Complex coherent_overlap(Complex beta, Complex alpha);

/// Pure state sum_i c_i |alpha_i>, normalized with the non-orthogonal
/// overlaps <alpha_j|alpha_i>.
class CoherentSuperposition {
 public:
  explicit CoherentSuperposition(std::vector<CoherentTerm> terms);

  static CoherentSuperposition coherent(Complex alpha);

  std::span<const CoherentTerm> terms() const { return terms_; }
  bool renormalized() const { return renormalized_; }

 private:
  std::vector<CoherentTerm> terms_;
  bool renormalized_ = false;
};

/// Stoler state D(alpha) S(zeta)|0>, zeta = r e^{i theta},
/// S(zeta) = exp(zeta a^dag^2 / 2 - zeta^* a^2 / 2).
class SqueezedState {
 public:
  SqueezedState(Complex alpha, double r, double theta);

  Complex alpha() const { return alpha_; }
  double r() const { return r_; }
  /// Reduced to [0, 2 pi).
  double theta() const { return theta_; }
  /// e^{i theta} tanh r; (a - alpha) - nu (a^dag - alpha^*) annihilates the state.
  Complex nu() const;

 private:
  Complex alpha_;
  double r_;
  double theta_;
};

using PureState = std::variant<FockSuperposition, CoherentSuperposition, SqueezedState>;

struct MixtureComponent {
  double weight;
  PureState state;
};

enum class StateKind { fock, coherent_superposition, squeezed, mixture };

/// A pure state or a convex combination of pure states (no deeper nesting).
class StateSpec {
 public:
  StateSpec(FockSuperposition state);
  StateSpec(CoherentSuperposition state);
  StateSpec(SqueezedState state);
  StateSpec(PureState state);

  StateKind kind() const;
  bool is_mixture() const { return is_mixture_; }
  /// Pure specs expose themselves as a single weight-1 component.
  std::span<const MixtureComponent> components() const { return components_; }
  /// Throws UnsupportedStateError for mixtures.
  const PureState& pure() const;

 private:
  friend StateSpec mix(std::vector<MixtureComponent> components);
  StateSpec() = default;

  std::vector<MixtureComponent> components_;
  bool is_mixture_ = false;
};

/// Convex combination. Weights must lie in (0, 1] and sum to 1 within 1e-12.
/// A single weight-1 component collapses to the pure spec.
StateSpec mix(std::vector<MixtureComponent> components);

/// sqrt(xi)|0> + sqrt(1-xi) e^{i phi}|n>.
FockSuperposition make_vac_fock_superposition(double xi, double phi, int n);

/// N (sqrt(xi)|-alpha> + sqrt(1-xi) e^{i phi}|alpha>) with
/// N = (1 + 2 sqrt(xi(1-xi)) cos(phi) e^{-2 alpha^2})^{-1/2}.
/// Zero-weight terms are dropped, so xi = 0 or 1 gives a single coherent state.
/// xi = 1/2, phi = 0 (pi) is the even (odd) coherent state
/// (|-alpha> +- |alpha>) / sqrt(2 (1 +- e^{-2 alpha^2})).
CoherentSuperposition make_cat(double alpha, double xi, double phi);

/// Number-basis amplitudes <n|psi>, n = 0..N_cut, and the neglected mass.
struct FockAmplitudes {
  std::vector<Complex> amplitudes;
  double tail_mass = 0.0;
};

inline constexpr std::size_t kDefaultMaxCutoff = 512;
inline constexpr double kDefaultTailBound = 1e-12;

/// N_cut is the smallest N whose cumulative photon-number probability reaches
/// 1 - tail_bound. Throws ResourceError if N_cut would exceed max_cutoff.
FockAmplitudes fock_amplitudes(const PureState& state, double tail_bound = kDefaultTailBound,
                               std::size_t max_cutoff = kDefaultMaxCutoff);

/// The first `count` amplitudes <n|psi>, n < count, with no truncation logic.
std::vector<Complex> leading_fock_amplitudes(const PureState& state, std::size_t count);

/// Truncated density matrix rho(n, m) = <n|rho|m>.
struct FockDensity {
  Eigen::MatrixXcd rho;
  double tail_mass = 0.0;

  std::size_t dim() const { return static_cast<std::size_t>(rho.rows()); }
  double trace() const { return rho.trace().real(); }
  double purity() const;
  double hermiticity_defect() const;
  double min_eigenvalue() const;
};

/// Cutoff is chosen per component and maximized over mixture components.
FockDensity to_fock_density(const StateSpec& spec, double tail_bound = kDefaultTailBound,
                            std::size_t max_cutoff = kDefaultMaxCutoff);

/// Zero-pads to `dim` (no-op if already that large).
FockDensity padded(const FockDensity& density, std::size_t dim);

/// <psi|a^dag a|psi> without truncation.
double mean_photon_number(const PureState& state);

/// Amplitudes of the coherent states |alpha_i> appearing in the state
/// (coherent terms, squeezed displacement).
std::vector<Complex> coherent_amplitudes(const PureState& state);

/// True for coherent and squeezed states (including the vacuum as a Fock spec).
bool is_gaussian(const PureState& state);

}  // namespace nonclass
