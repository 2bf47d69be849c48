// Acceptance run: one PASS/FAIL line per criterion, followed by the worst
// deviation seen against its pinned tolerance. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "nonclass/cli.hpp"
#include "nonclass/depth.hpp"
#include "nonclass/diagnostics.hpp"
#include "nonclass/distance.hpp"
#include "nonclass/phase_space.hpp"
#include "nonclass/simplex.hpp"
#include "oracles.hpp"

using namespace nonclass;

namespace {

constexpr double kPi = std::numbers::pi;

// Pinned tolerances.
constexpr double kTolTau = 1e-3;           // criterion 1
constexpr double kTolR = 1e-9;             // criterion 2
constexpr double kTauProbe = 0.99;         // criterion 2
constexpr double kTolAnalyticMin = 1e-8;   // criterion 2
constexpr double kTolDistance = 1e-8;      // criterion 3
constexpr double kTolBetaSqueezed = 1e-6;  // criterion 3
constexpr double kTolCatSmall = 1e-6;      // criterion 3
constexpr double kTolCatArgmax = 1e-5;     // criterion 3
constexpr double kTolCatLarge = 1e-4;      // criterion 3
constexpr double kTolBijection = 1e-12;    // criterion 4
constexpr double kTolWigner = 1e-8;        // criterion 5
constexpr double kTolHusimi = 1e-10;       // criterion 5
constexpr double kTolBases = 1e-8;         // criterion 5
constexpr double kTolNorm = 1e-4;          // criterion 5
constexpr double kTolDiag = 1e-12;         // criterion 6
constexpr double kTimeLimitSeconds = 15 * 60;  // criterion 8

class Criterion {
 public:
  explicit Criterion(std::string title) : title_(std::move(title)) {}

  // Records |got - want| <= tol under `label`, tracking the worst ratio.
  void close(const std::string& label, double got, double want, double tol) {
    const double dev = std::abs(got - want);
    worst_ = std::max(worst_, dev / tol);
    if (!(dev <= tol)) fail(label + ": got " + fmt(got) + ", want " + fmt(want) + " (|diff| " + fmt(dev) + ")");
  }

  void require(const std::string& label, bool ok) {
    if (!ok) fail(label);
  }

  void note(const std::string& text) { notes_.push_back(text); }

  bool report(int number) const {
    const bool ok = failures_.empty();
    std::printf("[%s] criterion %d: %s", ok ? "PASS" : "FAIL", number, title_.c_str());
    if (worst_ > 0.0) std::printf("  (worst deviation %.3g x tolerance)", worst_);
    std::printf("\n");
    for (const auto& n : notes_) std::printf("         %s\n", n.c_str());
    for (const auto& f : failures_) std::printf("    fail: %s\n", f.c_str());
    return ok;
  }

  static std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
  }

 private:
  void fail(std::string text) { failures_.push_back(std::move(text)); }

  std::string title_;
  double worst_ = 0.0;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string tag(const char* name, double v) { return std::string(name) + "=" + Criterion::fmt(v); }

StateSpec vac_fock_mixture(int n, double xi) {
  return sweep_state(SweepFamily::vac_fock_mixture, {static_cast<double>(n), xi});
}

double tau2_closed_form(double xi) { return (std::sqrt(xi * (1 - xi)) - 1 + xi) / (2 * xi - 1); }

// ---------------------------------------------------------------------------

Criterion mixture_curves() {
  Criterion c("depth curves of vacuum/number mixtures");
  DepthOptions opt;
  opt.tol_tau = kTolTau;
  const auto start = std::chrono::steady_clock::now();
  for (int k = 1; k <= 9; ++k) {
    const double xi = k / 10.0;
    c.close(tag("n=1 xi", xi), nonclassical_depth(vac_fock_mixture(1, xi), opt).tau_m, 1 - xi, kTolTau);
    if (k != 5) {
      c.close(tag("n=2 xi", xi), nonclassical_depth(vac_fock_mixture(2, xi), opt).tau_m, tau2_closed_form(xi), kTolTau);
    }
  }
  std::vector<double> t2, t3, t4;
  std::vector<double> xis;
  for (int k = 11; k <= 19; ++k) xis.push_back(k / 20.0);
  for (const double xi : xis) {
    t2.push_back(nonclassical_depth(vac_fock_mixture(2, xi), opt).tau_m);
    t3.push_back(nonclassical_depth(vac_fock_mixture(3, xi), opt).tau_m);
    t4.push_back(nonclassical_depth(vac_fock_mixture(4, xi), opt).tau_m);
  }
  for (std::size_t i = 0; i < xis.size(); ++i) {
    c.require("order at " + tag("xi", xis[i]), t4[i] >= t3[i] && t3[i] >= t2[i]);
    if (i > 0) {
      c.require("n=3 decreasing at " + tag("xi", xis[i]), t3[i] < t3[i - 1]);
      c.require("n=4 decreasing at " + tag("xi", xis[i]), t4[i] < t4[i - 1]);
    }
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  c.require("runtime under 5 minutes", seconds < 300);
  c.note("n=3,4 at xi=0.95: " + Criterion::fmt(t3.back()) + ", " + Criterion::fmt(t4.back()) + "; runtime " +
         Criterion::fmt(seconds) + " s");
  return c;
}

Criterion maximum_depth() {
  Criterion c("maximum depth of vacuum/one-photon superpositions and cats");
  std::vector<std::pair<std::string, StateSpec>> states;
  for (double xi : {0.1, 0.5, 0.9}) {
    for (double phi : {0.0, kPi / 2}) {
      states.emplace_back("psi01 " + tag("xi", xi) + " " + tag("phi", phi),
                          StateSpec(make_vac_fock_superposition(xi, phi, 1)));
    }
  }
  for (double alpha : {0.5, 1.5, 3.0}) {
    states.emplace_back("even cat " + tag("alpha", alpha), StateSpec(make_cat(alpha, 0.5, 0.0)));
    states.emplace_back("odd cat " + tag("alpha", alpha), StateSpec(make_cat(alpha, 0.5, kPi)));
  }
  for (const auto& [label, spec] : states) {
    const auto m = global_min_r(spec, kTauProbe);
    c.require(label + ": min R at tau=0.99 is " + Criterion::fmt(m.r_min), m.r_min < -kTolR);
    const auto rep = nonclassical_depth(spec);
    c.require(label + ": tau_m " + Criterion::fmt(rep.tau_m), rep.tau_m >= kTauProbe);
  }

  // Vacuum/one-photon: with R = e^{-|z|^2/tau} bracket / (pi tau), the bracket
  // is smallest on theta = phi + pi at |z| = tau sqrt(xi/(1-xi)).
  for (double xi : {0.1, 0.5, 0.9}) {
    for (double phi : {0.0, kPi / 2}) {
      const StateSpec s(make_vac_fock_superposition(xi, phi, 1));
      for (double tau : {0.3, 0.6, 0.9}) {
        auto bracket = [&](Complex z) { return r_function(s, {z, tau}) * kPi * tau * std::exp(std::norm(z) / tau); };
        const Complex z_star = std::polar(tau * std::sqrt(xi / (1 - xi)), phi + kPi);
        const double want = (1 - xi) * (tau - 1) / tau;
        const std::string label = "bracket " + tag("xi", xi) + " " + tag("phi", phi) + " " + tag("tau", tau);
        c.close(label + " at z*", bracket(z_star), want, kTolAnalyticMin);
        SimplexOptions o;
        o.f_tolerance = 1e-15;
        o.x_tolerance = 1e-10;
        o.restarts = 2;
        const auto found = minimize_simplex(bracket, z_star + Complex{0.05, -0.05}, o);
        c.close(label + " minimum", found.f, want, kTolAnalyticMin);
      }
    }
  }

  // Cats: F = R pi tau (e^{alpha^2} + 2 sqrt(xi(1-xi)) cos(phi) e^{-alpha^2}) e^{|z|^2/tau}.
  for (double alpha : {0.5, 1.5, 3.0}) {
    for (double xi : {0.3, 0.5}) {
      for (double phi : {0.0, kPi / 2}) {
        const StateSpec s(make_cat(alpha, xi, phi));
        for (double tau : {0.3, 0.5, 0.8}) {
          const double k = std::sqrt(xi * (1 - xi));
          const double norm = std::exp(alpha * alpha) + 2 * k * std::cos(phi) * std::exp(-alpha * alpha);
          auto f = [&](Complex z) { return r_function(s, {z, tau}) * kPi * tau * norm * std::exp(std::norm(z) / tau); };
          const double want = -4 * k * std::sinh(alpha * alpha * (1 - tau) / tau);
          const Complex z_star{tau * (std::log(xi) - std::log(1 - xi)) / (4 * alpha), (kPi + phi) * tau / (2 * alpha)};
          const std::string label = "cat F_min " + tag("alpha", alpha) + " " + tag("xi", xi) + " " + tag("phi", phi) +
                                    " " + tag("tau", tau);
          const double scale = std::max(1.0, std::abs(want));
          c.close(label + " at z*", f(z_star) / scale, want / scale, kTolAnalyticMin);
          SimplexOptions o;
          o.initial_step = 0.02 * tau / alpha;
          o.f_tolerance = 1e-15 * scale;
          o.x_tolerance = 1e-11;
          o.restarts = 2;
          const auto found = minimize_simplex(f, z_star + Complex{0.01, 0.01} * (tau / alpha), o);
          c.close(label + " minimum", found.f / scale, want / scale, kTolAnalyticMin);
        }
      }
    }
  }
  return c;
}

Criterion distance_closed_forms() {
  Criterion c("distance-type degree against its closed forms");
  for (int n = 1; n <= 10; ++n) {
    const auto rep = numeric_distance(StateSpec(FockSuperposition::number_state(static_cast<std::size_t>(n))));
    c.close(tag("number n", n), rep.d_m, 1 - std::exp(n * std::log(n) - n - std::lgamma(n + 1.0)), kTolDistance);
  }
  for (int k = 0; k <= 20; ++k) {
    const double xi = k / 20.0;
    const auto rep = numeric_distance(StateSpec(make_vac_fock_superposition(xi, 0.4, 1)));
    c.close(tag("vac/one xi", xi), rep.d_m, d_m_closed_form(ClosedFormFamily::vac_one, xi), kTolDistance);
  }
  for (double r : {0.25, 0.5, 1.0, 2.0}) {
    const Complex alpha{0.6, -0.4};
    const auto rep = numeric_distance(StateSpec(SqueezedState(alpha, r, 0.7)));
    c.close(tag("squeezed r", r), rep.d_m, 1 - 1 / std::cosh(r), kTolDistance);
    c.close(tag("squeezed beta* r", r), std::abs(rep.beta_star - alpha), 0.0, kTolBetaSqueezed);
  }
  for (double alpha : {0.2, 0.6, 1.0}) {
    const auto rep = numeric_distance(StateSpec(make_cat(alpha, 0.5, 0.0)));
    c.close(tag("even cat alpha", alpha), rep.d_m, 1 - 1 / std::cosh(alpha * alpha), kTolCatSmall);
  }
  const auto cat27 = numeric_distance(StateSpec(make_cat(2.7, 0.5, 0.0)));
  c.close("even cat alpha=2.7 |x*|", std::abs(cat27.beta_star.real()), 2.699997, kTolCatArgmax);
  c.note("alpha=2.7: beta* = " + Criterion::fmt(cat27.beta_star.real()) + " + " +
         Criterion::fmt(cat27.beta_star.imag()) + "i");
  const auto cat3 = numeric_distance(StateSpec(make_cat(3.0, 0.5, 0.0)));
  c.close("even cat alpha=3", cat3.d_m, 0.5 * (1 - std::exp(-18.0)), kTolCatLarge);
  return c;
}

Criterion gaussian_equivalence() {
  Criterion c("Gaussian depth/distance bijection");
  for (int k = 0; k < 50; ++k) {
    const double r = 0.01 * std::pow(500.0, k / 49.0);
    const double tau = depth_gaussian(SqueezedState({}, r, 0.0)).tau_m;
    c.close(tag("r", r), gaussian_bijection(tau), 1 - 1 / std::cosh(r), kTolBijection);
  }
  return c;
}

struct CatalogEntry {
  std::string name;
  StateSpec spec;
  oracle::Matrix rho;  // independent number-basis density
};

std::vector<CatalogEntry> catalog() {
  const int dim = 80;
  std::vector<CatalogEntry> out;
  auto pure = [&](const std::string& name, const PureState& s, const oracle::Vector& v) {
    out.push_back({name, StateSpec(s), oracle::projector(oracle::normalized(v))});
  };
  pure("|1>", FockSuperposition::number_state(1), oracle::basis(1, dim));
  pure("vac/3 superposition", make_vac_fock_superposition(0.4, 0.7, 3),
       std::sqrt(0.4) * oracle::basis(0, dim) + std::polar(std::sqrt(0.6), 0.7) * oracle::basis(3, dim));
  pure("even cat 1.5", make_cat(1.5, 0.5, 0.0), oracle::coherent(-1.5, dim) + oracle::coherent(1.5, dim));
  const Complex a1{1.0, 0.5};
  const Complex a2{-0.3, 0.8};
  pure("two-term coherent", CoherentSuperposition({{{1, 0}, a1}, {{0.2, -0.6}, a2}}),
       oracle::coherent(a1, dim) + Complex{0.2, -0.6} * oracle::coherent(a2, dim));
  pure("squeezed", SqueezedState({0.4, -0.3}, 0.5, 0.6), oracle::squeezed({0.4, -0.3}, 0.5, 0.6, dim));

  const StateSpec m = mix({{0.5, FockSuperposition::number_state(2)},
                           {0.3, CoherentSuperposition::coherent({0, 0.7})},
                           {0.2, SqueezedState({}, 0.2, 0.0)}});
  const oracle::Matrix rho = 0.5 * oracle::projector(oracle::basis(2, dim)) +
                             0.3 * oracle::projector(oracle::coherent({0, 0.7}, dim)) +
                             0.2 * oracle::projector(oracle::squeezed({}, 0.2, 0.0, dim));
  out.push_back({"mixture", m, rho});
  return out;
}

Criterion phase_space_consistency() {
  Criterion c("phase-space consistency");
  const auto states = catalog();
  std::vector<Complex> probes;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) probes.push_back({-2.0 + i + 0.13, -2.0 + j - 0.07});
  }
  for (const auto& s : states) {
    for (const Complex z : probes) {
      c.close(s.name + " W", r_function(s.spec, {z, 0.5}), oracle::wigner(s.rho, z), kTolWigner);
      c.close(s.name + " Q", r_function(s.spec, {z, 1.0}), oracle::husimi(s.rho, z), kTolHusimi);
    }
  }

  // Both sums apply to coherent superpositions; the truncated number-basis sum
  // is only meaningful above tau = 1/2.
  for (const auto& s : states) {
    const auto* coh = s.spec.is_mixture() ? nullptr : std::get_if<CoherentSuperposition>(&s.spec.pure());
    if (coh == nullptr) continue;
    const FockDensity d = to_fock_density(s.spec, 1e-14);
    for (double tau : {0.6, 0.75, 0.9}) {
      for (const Complex z : probes) c.close(s.name + " bases", r_fock(d, z, tau), r_coherent(*coh, z, tau), kTolBases);
    }
  }

  const double half = 7.0;
  const int res = 281;
  GridSpec grid{-half, half, -half, half, res};
  const double h = 2 * half / (res - 1);
  for (const std::size_t idx : {0u, 2u, 3u, 5u}) {
    for (double tau : {0.3, 0.5, 0.8}) {
      const RGrid g = r_grid(states[idx].spec, tau, grid);
      double sum = 0.0;
      for (int j = 0; j < res; ++j) {
        for (int i = 0; i < res; ++i) {
          const double w = (i == 0 || i == res - 1 ? 0.5 : 1.0) * (j == 0 || j == res - 1 ? 0.5 : 1.0);
          sum += w * g.at(i, j);
        }
      }
      c.close(states[idx].name + " norm " + tag("tau", tau), sum * h * h, 1.0, kTolNorm);
    }
  }
  return c;
}

Criterion diagnostics_check() {
  Criterion c("Mandel q, impurity and quadrature variances");
  for (int n = 1; n <= 4; ++n) {
    for (int k = 0; k <= 10; ++k) {
      const double xi = k / 10.0;
      const StateSpec mixture = vac_fock_mixture(n, xi);
      const StateSpec superposition(make_vac_fock_superposition(xi, 0.3, n));
      const std::string label = tag("n", n) + " " + tag("xi", xi);
      if (k < 10) {
        c.close("q mixture " + label, mandel_q(mixture), n * xi - 1, kTolDiag);
        c.close("q superposition " + label, mandel_q(superposition), n * xi - 1, kTolDiag);
      }
      c.close("D " + label, impurity(mixture), 2 * xi * (1 - xi), kTolDiag);
      const double best = quadrature_variances(mixture).best_var;
      c.require("best_var " + label + " = " + Criterion::fmt(best), best >= 0.25 - kTolDiag);
    }
  }
  return c;
}

Criterion rules() {
  Criterion c("vacuum-free and Gaussian-mixture rules");
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto rep = nonclassical_depth(StateSpec(FockSuperposition::number_state(n)));
    c.require(tag("|n> n", static_cast<double>(n)), rep.tau_m == 1.0 && rep.method == DepthMethod::rule_zero_vacuum);
  }
  for (double phi : {0.0, 1.0, kPi}) {
    for (double w : {0.2, 0.7}) {
      const StateSpec s(FockSuperposition({{0, 0}, {std::sqrt(w), 0}, std::polar(std::sqrt(1 - w), phi)}));
      const auto rep = nonclassical_depth(s);
      c.require("|1>,|2> superposition " + tag("w", w) + " " + tag("phi", phi),
                rep.tau_m == 1.0 && rep.method == DepthMethod::rule_zero_vacuum);
    }
  }
  const StateSpec m = mix({{0.5, CoherentSuperposition::coherent({0.8, -0.2})}, {0.5, SqueezedState({}, 1.0, 0.0)}});
  const auto rep = nonclassical_depth(m);
  c.require("coherent+squeezed method", rep.method == DepthMethod::rule_mixture_squeezed);
  c.close("coherent+squeezed tau_m", rep.tau_m, std::tanh(1.0) / (1 + std::tanh(1.0)), 1e-15);
  return c;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  int failed = 0;
  int number = 0;
  const std::vector<std::function<Criterion()>> criteria{mixture_curves,
                                                        maximum_depth,
                                                        distance_closed_forms,
                                                        gaussian_equivalence,
                                                        phase_space_consistency,
                                                        diagnostics_check,
                                                        rules};
  for (const auto& run : criteria) {
    const Criterion c = run();
    if (!c.report(++number)) ++failed;
    std::fflush(stdout);
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Criterion timing("full acceptance run under 15 minutes");
  timing.require("wall time " + Criterion::fmt(seconds) + " s", seconds < kTimeLimitSeconds);
  timing.note("wall time " + Criterion::fmt(seconds) + " s");
  if (!timing.report(++number)) ++failed;
  std::printf("%d of %d criteria passed\n", number - failed, number);
  return failed;
}
