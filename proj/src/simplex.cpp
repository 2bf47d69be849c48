#include "nonclass/simplex.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace nonclass {

namespace {

struct Vertex {
  Complex x;
  double f;
};

SimplexResult descend(const std::function<double(Complex)>& f, Complex start, double step, const SimplexOptions& options,
                      int budget) {
  int evaluations = 0;
  auto eval = [&](Complex x) {
    ++evaluations;
    return f(x);
  };

  std::array<Vertex, 3> simplex{{{start, eval(start)},
                                 {start + Complex{step, 0.0}, eval(start + Complex{step, 0.0})},
                                 {start + Complex{0.0, step}, eval(start + Complex{0.0, step})}}};
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };

  bool converged = false;
  while (evaluations < budget) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    Vertex& best = simplex[0];
    Vertex& second = simplex[1];
    Vertex& worst = simplex[2];

    const double size = std::max(std::abs(second.x - best.x), std::abs(worst.x - best.x));
    if (worst.f - best.f <= options.f_tolerance && size <= options.x_tolerance) {
      converged = true;
      break;
    }

    const Complex centroid = 0.5 * (best.x + second.x);
    const Complex reflected = centroid + (centroid - worst.x);
    const double f_reflected = eval(reflected);

    if (f_reflected < best.f) {
      const Complex expanded = centroid + 2.0 * (centroid - worst.x);
      const double f_expanded = eval(expanded);
      worst = f_expanded < f_reflected ? Vertex{expanded, f_expanded} : Vertex{reflected, f_reflected};
      continue;
    }
    if (f_reflected < second.f) {
      worst = {reflected, f_reflected};
      continue;
    }

    const bool outside = f_reflected < worst.f;
    const Complex contracted = outside ? centroid + 0.5 * (reflected - centroid) : centroid + 0.5 * (worst.x - centroid);
    const double f_contracted = eval(contracted);
    if (f_contracted < std::min(f_reflected, worst.f)) {
      worst = {contracted, f_contracted};
      continue;
    }

    for (std::size_t i = 1; i < simplex.size(); ++i) {
      simplex[i].x = best.x + 0.5 * (simplex[i].x - best.x);
      simplex[i].f = eval(simplex[i].x);
    }
  }

  const auto best = *std::min_element(simplex.begin(), simplex.end(), by_value);
  return {best.x, best.f, evaluations, converged};
}

}  // namespace

SimplexResult minimize_simplex(const std::function<double(Complex)>& f, Complex start, const SimplexOptions& options) {
  SimplexResult result = descend(f, start, options.initial_step, options, options.max_evaluations);
  for (int restart = 0; restart < options.restarts; ++restart) {
    const int remaining = options.max_evaluations - result.evaluations;
    if (remaining <= 3) break;
    const double step = std::max(options.initial_step * 1e-2, 100.0 * options.x_tolerance);
    SimplexResult again = descend(f, result.x, step, options, remaining);
    again.evaluations += result.evaluations;
    if (again.f <= result.f) {
      result = again;
    } else {
      result.evaluations = again.evaluations;
    }
  }
  return result;
}

}  // namespace nonclass
