#include "nonclass/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "nonclass/errors.hpp"
#include "nonclass/overloaded.hpp"

namespace nonclass {

namespace {

constexpr double kRenormalizeFlag = 1e-6;
constexpr double kWeightSumTolerance = 1e-12;
// Cumulative probabilities cannot resolve tails much below this.
constexpr double kTailFloor = 1e-14;

// Neumaier-compensated running sum; cutoff decisions compare 1 - sum
// against bounds down to 1e-14.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

// Yields <n|psi> for n = 0, 1, 2, ... one at a time.
class CoherentAmplitudeStream {
 public:
  explicit CoherentAmplitudeStream(const CoherentSuperposition& state) : terms_(state.terms()) {}

  Complex next() {
    Complex amp{0.0, 0.0};
    for (const auto& term : terms_) {
      if (term.alpha == Complex{}) {
        if (n_ == 0) amp += term.coeff;
        continue;
      }
      const Complex log_amp = -0.5 * std::norm(term.alpha) + static_cast<double>(n_) * std::log(term.alpha) -
                              0.5 * std::lgamma(static_cast<double>(n_) + 1.0);
      amp += term.coeff * std::exp(log_amp);
    }
    ++n_;
    return amp;
  }

 private:
  std::span<const CoherentTerm> terms_;
  std::size_t n_ = 0;
};

// Three-term recurrence
//   sqrt(n+1) psi_{n+1} = (alpha - nu alpha^*) psi_n + nu sqrt(n) psi_{n-1}
// carried as mantissas with a shared log scale so psi_0 may underflow.
class SqueezedAmplitudeStream {
 public:
  explicit SqueezedAmplitudeStream(const SqueezedState& state)
      : nu_(state.nu()), drive_(state.alpha() - state.nu() * std::conj(state.alpha())) {
    const Complex alpha = state.alpha();
    const Complex log_psi0 =
        -0.5 * std::norm(alpha) + 0.5 * nu_ * std::conj(alpha) * std::conj(alpha) - 0.5 * std::log(std::cosh(state.r()));
    log_scale_ = log_psi0.real();
    current_ = std::polar(1.0, log_psi0.imag());
  }

  Complex next() {
    Complex out;
    if (n_ == 0) {
      out = current_;
    } else {
      const double n = static_cast<double>(n_ - 1);
      const Complex following = (drive_ * current_ + nu_ * std::sqrt(n) * previous_) / std::sqrt(n + 1.0);
      previous_ = current_;
      current_ = following;
      rescale();
      out = current_;
    }
    ++n_;
    return out * std::exp(log_scale_);
  }

 private:
  void rescale() {
    const double mag = std::max(std::abs(current_), std::abs(previous_));
    if (mag > 1e100 || (mag < 1e-100 && mag > 0.0)) {
      const double shift = std::log(mag);
      current_ /= mag;
      previous_ /= mag;
      log_scale_ += shift;
    }
  }

  Complex nu_;
  Complex drive_;
  Complex previous_{0.0, 0.0};
  Complex current_;
  double log_scale_ = 0.0;
  std::size_t n_ = 0;
};

void check_tail_bound(double tail_bound) {
  if (!(tail_bound > 0.0 && tail_bound <= 1e-6)) {
    throw DomainError("tail_bound must lie in (0, 1e-6], got " + std::to_string(tail_bound));
  }
}

template <class Stream>
FockAmplitudes truncate_stream(Stream stream, double tail_bound, std::size_t max_cutoff) {
  const double target = std::max(tail_bound, kTailFloor);
  FockAmplitudes out;
  CompensatedSum cumulative;
  for (std::size_t n = 0;; ++n) {
    if (n > max_cutoff) {
      throw ResourceError("Fock cutoff would exceed the limit of " + std::to_string(max_cutoff) +
                          " photons (remaining mass " + std::to_string(1.0 - cumulative.value()) + ")");
    }
    const Complex amp = stream.next();
    out.amplitudes.push_back(amp);
    cumulative.add(std::norm(amp));
    const double remaining = 1.0 - cumulative.value();
    if (remaining < -1e-9) {
      throw NumericError("number-basis expansion lost normalization at n = " + std::to_string(n));
    }
    if (remaining <= target) {
      out.tail_mass = std::max(remaining, 0.0);
      return out;
    }
  }
}

}  // namespace

Complex checked_amplitude(Complex value, const char* what) {
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError(std::string(what) + " must be finite");
  }
  return value;
}

Complex coherent_overlap(Complex beta, Complex alpha) {
  return std::exp(-0.5 * std::norm(beta) - 0.5 * std::norm(alpha) + std::conj(beta) * alpha);
}

// ---------------------------------------------------------------------------

FockSuperposition::FockSuperposition(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_) checked_amplitude(c, "Fock coefficient");
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
  if (coeffs_.empty()) throw DomainError("Fock superposition needs at least one nonzero coefficient");

  double norm2 = 0.0;
  for (const auto& c : coeffs_) norm2 += std::norm(c);
  const double norm = std::sqrt(norm2);
  renormalized_ = std::abs(norm - 1.0) > kRenormalizeFlag;
  for (auto& c : coeffs_) c /= norm;
}

FockSuperposition FockSuperposition::number_state(std::size_t n) {
  std::vector<Complex> coeffs(n + 1);
  coeffs[n] = 1.0;
  return FockSuperposition(std::move(coeffs));
}

CoherentSuperposition::CoherentSuperposition(std::vector<CoherentTerm> terms) {
  for (const auto& t : terms) {
    checked_amplitude(t.coeff, "coherent term coefficient");
    checked_amplitude(t.alpha, "coherent term alpha");
    if (t.coeff != Complex{}) terms_.push_back(t);
  }
  if (terms_.empty()) throw DomainError("coherent superposition needs at least one nonzero term");

  double norm2 = 0.0;
  for (const auto& ti : terms_) {
    for (const auto& tj : terms_) {
      norm2 += (std::conj(tj.coeff) * ti.coeff * coherent_overlap(tj.alpha, ti.alpha)).real();
    }
  }
  if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
    throw DomainError("coherent superposition has zero norm");
  }
  const double norm = std::sqrt(norm2);
  renormalized_ = std::abs(norm - 1.0) > kRenormalizeFlag;
  for (auto& t : terms_) t.coeff /= norm;
}

CoherentSuperposition CoherentSuperposition::coherent(Complex alpha) {
  return CoherentSuperposition({{Complex{1.0, 0.0}, alpha}});
}

SqueezedState::SqueezedState(Complex alpha, double r, double theta) : alpha_(checked_amplitude(alpha, "alpha")) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("squeeze magnitude r must be finite and >= 0");
  if (!std::isfinite(theta)) throw DomainError("squeeze phase theta must be finite");
  r_ = r;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  theta_ = std::fmod(theta, two_pi);
  if (theta_ < 0.0) theta_ += two_pi;
  if (theta_ >= two_pi) theta_ = 0.0;
}

Complex SqueezedState::nu() const { return std::polar(std::tanh(r_), theta_); }

// ---------------------------------------------------------------------------

StateSpec::StateSpec(FockSuperposition state) : StateSpec(PureState(std::move(state))) {}
StateSpec::StateSpec(CoherentSuperposition state) : StateSpec(PureState(std::move(state))) {}
StateSpec::StateSpec(SqueezedState state) : StateSpec(PureState(std::move(state))) {}
StateSpec::StateSpec(PureState state) { components_.push_back({1.0, std::move(state)}); }

StateKind StateSpec::kind() const {
  if (is_mixture_) return StateKind::mixture;
  return std::visit(Overloaded{[](const FockSuperposition&) { return StateKind::fock; },
                               [](const CoherentSuperposition&) { return StateKind::coherent_superposition; },
                               [](const SqueezedState&) { return StateKind::squeezed; }},
                    components_.front().state);
}

const PureState& StateSpec::pure() const {
  if (is_mixture_) throw UnsupportedStateError("operation requires a pure state, got a mixture");
  return components_.front().state;
}

StateSpec mix(std::vector<MixtureComponent> components) {
  if (components.empty()) throw DomainError("mixture needs at least one component");
  double total = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const double w = components[i].weight;
    if (!std::isfinite(w) || w <= 0.0 || w > 1.0) {
      throw DomainError("mixture weight " + std::to_string(i) + " must lie in (0, 1]");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > kWeightSumTolerance) {
    throw DomainError("mixture weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  if (components.size() == 1) return StateSpec(std::move(components.front().state));

  StateSpec spec;
  spec.components_ = std::move(components);
  spec.is_mixture_ = true;
  return spec;
}

FockSuperposition make_vac_fock_superposition(double xi, double phi, int n) {
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("xi must lie in [0, 1]");
  if (n < 1) throw DomainError("photon number n must be >= 1");
  if (!std::isfinite(phi)) throw DomainError("phase phi must be finite");
  std::vector<Complex> coeffs(static_cast<std::size_t>(n) + 1);
  coeffs[0] = std::sqrt(xi);
  coeffs[static_cast<std::size_t>(n)] = std::polar(std::sqrt(1.0 - xi), phi);
  return FockSuperposition(std::move(coeffs));
}

CoherentSuperposition make_cat(double alpha, double xi, double phi) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw DomainError("cat amplitude alpha must be > 0");
  if (!(xi >= 0.0 && xi <= 1.0)) throw DomainError("xi must lie in [0, 1]");
  if (!std::isfinite(phi)) throw DomainError("phase phi must be finite");
  const double norm = 1.0 / std::sqrt(1.0 + 2.0 * std::sqrt(xi * (1.0 - xi)) * std::cos(phi) *
                                                std::exp(-2.0 * alpha * alpha));
  std::vector<CoherentTerm> terms;
  terms.push_back({norm * std::sqrt(xi), Complex{-alpha, 0.0}});
  terms.push_back({norm * std::polar(std::sqrt(1.0 - xi), phi), Complex{alpha, 0.0}});
  return CoherentSuperposition(std::move(terms));
}

// ---------------------------------------------------------------------------

FockAmplitudes fock_amplitudes(const PureState& state, double tail_bound, std::size_t max_cutoff) {
  check_tail_bound(tail_bound);
  return std::visit(
      Overloaded{
          [&](const FockSuperposition& s) {
            FockAmplitudes out;
            CompensatedSum cumulative;
            const auto coeffs = s.coeffs();
            for (std::size_t n = 0; n < coeffs.size(); ++n) {
              out.amplitudes.push_back(coeffs[n]);
              cumulative.add(std::norm(coeffs[n]));
              const double remaining = 1.0 - cumulative.value();
              if (remaining <= tail_bound || n + 1 == coeffs.size()) {
                out.tail_mass = std::max(remaining, 0.0);
                break;
              }
            }
            if (out.amplitudes.size() > max_cutoff + 1) {
              throw ResourceError("Fock cutoff would exceed the limit of " + std::to_string(max_cutoff) + " photons");
            }
            return out;
          },
          [&](const CoherentSuperposition& s) {
            return truncate_stream(CoherentAmplitudeStream(s), tail_bound, max_cutoff);
          },
          [&](const SqueezedState& s) {
            return truncate_stream(SqueezedAmplitudeStream(s), tail_bound, max_cutoff);
          }},
      state);
}

std::vector<Complex> leading_fock_amplitudes(const PureState& state, std::size_t count) {
  std::vector<Complex> out;
  out.reserve(count);
  auto drain = [&](auto stream) {
    for (std::size_t n = 0; n < count; ++n) out.push_back(stream.next());
  };
  std::visit(Overloaded{[&](const FockSuperposition& s) {
                          const auto c = s.coeffs();
                          for (std::size_t n = 0; n < count; ++n) out.push_back(n < c.size() ? c[n] : Complex{});
                        },
                        [&](const CoherentSuperposition& s) { drain(CoherentAmplitudeStream(s)); },
                        [&](const SqueezedState& s) { drain(SqueezedAmplitudeStream(s)); }},
             state);
  return out;
}

double FockDensity::purity() const { return rho.cwiseAbs2().sum(); }

double FockDensity::hermiticity_defect() const {
  if (rho.size() == 0) return 0.0;
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double FockDensity::min_eigenvalue() const {
  const Eigen::MatrixXcd hermitian = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(hermitian, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

FockDensity to_fock_density(const StateSpec& spec, double tail_bound, std::size_t max_cutoff) {
  std::vector<std::pair<double, FockAmplitudes>> parts;
  std::size_t dim = 0;
  for (const auto& component : spec.components()) {
    auto amps = fock_amplitudes(component.state, tail_bound, max_cutoff);
    dim = std::max(dim, amps.amplitudes.size());
    parts.emplace_back(component.weight, std::move(amps));
  }

  FockDensity out;
  out.rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (const auto& [weight, amps] : parts) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t n = 0; n < amps.amplitudes.size(); ++n) v(static_cast<Eigen::Index>(n)) = amps.amplitudes[n];
    out.rho.noalias() += weight * (v * v.adjoint());
  }
  out.tail_mass = std::max(1.0 - out.trace(), 0.0);
  return out;
}

FockDensity padded(const FockDensity& density, std::size_t dim) {
  if (density.dim() >= dim) return density;
  FockDensity out;
  out.tail_mass = density.tail_mass;
  out.rho = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto n = static_cast<Eigen::Index>(density.dim());
  out.rho.topLeftCorner(n, n) = density.rho;
  return out;
}

double mean_photon_number(const PureState& state) {
  return std::visit(Overloaded{[](const FockSuperposition& s) {
                                 double mean = 0.0;
                                 const auto c = s.coeffs();
                                 for (std::size_t n = 0; n < c.size(); ++n) mean += static_cast<double>(n) * std::norm(c[n]);
                                 return mean;
                               },
                               [](const CoherentSuperposition& s) {
                                 // <psi|a^dag a|psi> = sum_ij c_i^* c_j alpha_i^* alpha_j <alpha_i|alpha_j>
                                 double mean = 0.0;
                                 for (const auto& ti : s.terms()) {
                                   for (const auto& tj : s.terms()) {
                                     mean += (std::conj(ti.coeff * ti.alpha) * tj.coeff * tj.alpha *
                                              coherent_overlap(ti.alpha, tj.alpha))
                                                 .real();
                                   }
                                 }
                                 return mean;
                               },
                               [](const SqueezedState& s) {
                                 const double sh = std::sinh(s.r());
                                 return std::norm(s.alpha()) + sh * sh;
                               }},
                    state);
}

std::vector<Complex> coherent_amplitudes(const PureState& state) {
  return std::visit(Overloaded{[](const FockSuperposition&) { return std::vector<Complex>{}; },
                               [](const CoherentSuperposition& s) {
                                 std::vector<Complex> out;
                                 for (const auto& t : s.terms()) out.push_back(t.alpha);
                                 return out;
                               },
                               [](const SqueezedState& s) { return std::vector<Complex>{s.alpha()}; }},
                    state);
}

bool is_gaussian(const PureState& state) {
  return std::visit(Overloaded{[](const FockSuperposition& s) { return s.max_photon() == 0; },
                               [](const CoherentSuperposition& s) { return s.terms().size() == 1; },
                               [](const SqueezedState&) { return true; }},
                    state);
}

}  // namespace nonclass
