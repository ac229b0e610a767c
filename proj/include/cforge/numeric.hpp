#pragma once

#include <functional>
#include <vector>

namespace cforge::numeric {

using Function = std::function<double(double)>;

struct Minimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a minimum of f on [a, b].
Minimum golden_section(const Function& f, double a, double b, double tolerance = 1e-12);

/// Scans `points` equally spaced samples of [a, b], refines the best bracket
/// by golden section, and returns the smallest value seen, endpoints
/// included. Reliable for piecewise-smooth functions whose minimum may sit
/// on the boundary.
Minimum grid_golden_minimize(const Function& f, double a, double b, int points = 201,
                             double tolerance = 1e-12);

struct Integral {
  double value = 0.0;
  /// Sum of the Richardson error estimates that could not be brought under
  /// the requested tolerance before the depth limit was reached.
  double unresolved_error = 0.0;
  std::size_t evaluations = 0;
};

/// Adaptive Simpson on [a, b], started from `panels` equal panels that share
/// the tolerance evenly. Each split halves the local tolerance. An
/// interval that reaches `max_depth` is accepted as is, and its error
/// estimate is added to `unresolved_error`; a NumericalError carrying the
/// best value is thrown only when that total exceeds `tolerance`, so finite
/// jumps in the integrand (kinks of M) are integrated without failure.
Integral adaptive_simpson(const Function& f, double a, double b, double tolerance,
                          int max_depth = 48, int panels = 1);

/// Roots of f on [a, b]: grid brackets [x_k, x_{k+1}] where f changes sign
/// and both |f| exceed `threshold`, or where f is exactly zero at a grid
/// node, each refined by bisection.
struct Root {
  double x = 0.0;
  /// +1 when f goes from negative to positive, -1 for positive to negative,
  /// 0 for a touching zero at a grid node.
  int direction = 0;
};
std::vector<Root> bracket_roots(const Function& f, double a, double b, int points = 201,
                                double threshold = 1e-9, double tolerance = 1e-12);

/// Bisection on a bracket with f(a) and f(b) of opposite signs.
double bisect(const Function& f, double a, double b, double tolerance = 1e-12);

}  // namespace cforge::numeric
