#include "cforge/numeric.hpp"

#include <cmath>
#include <string>

#include "cforge/curve.hpp"
#include "cforge/error.hpp"

namespace cforge {

namespace {

// Second-order one-sided difference at steps 16h, 4h, h, then one Aitken
// step. Curves such as 1 - x^1.5 have an unbounded second derivative at 0,
// where the plain one-sided error decays only like sqrt(h); Aitken removes
// the leading power whatever its exponent. Without clean geometric
// convergence the finest estimate is kept.
double one_sided(const std::function<double(double)>& f, double x, double h, double sign) {
  const double fx = f(x);
  auto estimate = [&](double s) {
    return sign * (-3.0 * fx + 4.0 * f(x + sign * s) - f(x + 2.0 * sign * s)) / (2.0 * s);
  };
  const double d1 = estimate(16.0 * h);
  const double d2 = estimate(4.0 * h);
  const double d3 = estimate(h);
  const double a = d2 - d1;
  const double b = d3 - d2;
  if (a == 0.0) return d3;
  const double ratio = b / a;
  if (!(ratio > 0.0 && ratio < 0.9)) return d3;
  return d3 + b * ratio / (1.0 - ratio);
}

}  // namespace

double derivative(const std::function<double(double)>& f, double x, double h) {
  if (x - h < 0.0) return one_sided(f, x, h, 1.0);
  if (x + h > 1.0) return one_sided(f, x, h, -1.0);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

bool nonincreasing_on_grid(const Curve& curve, int points, double slack) {
  double previous = curve(0.0);
  for (int k = 1; k < points; ++k) {
    const double value = curve(static_cast<double>(k) / (points - 1));
    if (value > previous + slack) return false;
    previous = value;
  }
  return true;
}

}  // namespace cforge

namespace cforge::numeric {
namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct Simpson {
  const Function& f;
  double tolerance;
  int max_depth;
  Integral result;

  double eval(double x) {
    ++result.evaluations;
    return f(x);
  }

  double refine(double a, double fa, double m, double fm, double b, double fb, double whole,
                double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = eval(lm);
    const double frm = eval(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth >= max_depth || m - a <= 0.0 || b - m <= 0.0) {
      result.unresolved_error += std::fabs(delta) / 15.0;
      return left + right + delta / 15.0;
    }
    return refine(a, fa, lm, flm, m, fm, left, 0.5 * eps, depth + 1) +
           refine(m, fm, rm, frm, b, fb, right, 0.5 * eps, depth + 1);
  }
};

}  // namespace

Minimum golden_section(const Function& f, double a, double b, double tolerance) {
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tolerance) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

Minimum grid_golden_minimize(const Function& f, double a, double b, int points, double tolerance) {
  if (points < 3) points = 3;
  if (b <= a) return {a, f(a)};
  const double step = (b - a) / (points - 1);
  Minimum best{a, f(a)};
  int best_k = 0;
  for (int k = 1; k < points; ++k) {
    const double x = k == points - 1 ? b : a + k * step;
    const double value = f(x);
    if (value < best.value) {
      best = {x, value};
      best_k = k;
    }
  }
  const double lo = best_k == 0 ? a : a + (best_k - 1) * step;
  const double hi = best_k == points - 1 ? b : a + (best_k + 1) * step;
  const Minimum refined = golden_section(f, lo, std::min(hi, b), tolerance);
  if (refined.value < best.value) best = refined;
  return best;
}

Integral adaptive_simpson(const Function& f, double a, double b, double tolerance, int max_depth,
                          int panels) {
  Simpson s{f, tolerance, max_depth, {}};
  if (a == b) return {};
  if (panels < 1) panels = 1;
  const double width = (b - a) / panels;
  const double panel_tolerance = tolerance / panels;
  double left = a;
  double f_left = s.eval(a);
  for (int k = 0; k < panels; ++k) {
    const double right = k == panels - 1 ? b : a + (k + 1) * width;
    const double f_right = s.eval(right);
    const double m = 0.5 * (left + right);
    const double fm = s.eval(m);
    const double whole = (right - left) / 6.0 * (f_left + 4.0 * fm + f_right);
    s.result.value += s.refine(left, f_left, m, fm, right, f_right, whole, panel_tolerance, 0);
    left = right;
    f_left = f_right;
  }
  if (!std::isfinite(s.result.value)) {
    throw NumericalError("quadrature produced a non-finite value", s.result.value);
  }
  if (s.result.unresolved_error > tolerance) {
    throw NumericalError("quadrature did not converge: unresolved error " +
                             std::to_string(s.result.unresolved_error) + " exceeds tolerance",
                         s.result.value);
  }
  return s.result;
}

double bisect(const Function& f, double a, double b, double tolerance) {
  double fa = f(a);
  if (fa == 0.0) return a;
  for (int i = 0; i < 200 && b - a > tolerance; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

std::vector<Root> bracket_roots(const Function& f, double a, double b, int points,
                                double threshold, double tolerance) {
  std::vector<Root> roots;
  std::vector<double> xs(points), fs(points);
  for (int k = 0; k < points; ++k) {
    xs[k] = k == points - 1 ? b : a + (b - a) * k / (points - 1);
    fs[k] = f(xs[k]);
  }
  for (int k = 0; k + 1 < points; ++k) {
    if (fs[k] == 0.0) {
      const int before = k > 0 ? (fs[k - 1] > 0) - (fs[k - 1] < 0) : 0;
      const int after = (fs[k + 1] > 0) - (fs[k + 1] < 0);
      roots.push_back({xs[k], before < 0 && after > 0 ? 1 : before > 0 && after < 0 ? -1 : 0});
      continue;
    }
    if (std::fabs(fs[k]) > threshold && std::fabs(fs[k + 1]) > threshold &&
        (fs[k] < 0.0) != (fs[k + 1] < 0.0)) {
      roots.push_back({bisect(f, xs[k], xs[k + 1], tolerance), fs[k] < 0.0 ? 1 : -1});
    }
  }
  if (fs[points - 1] == 0.0) roots.push_back({xs[points - 1], 0});
  return roots;
}

}  // namespace cforge::numeric
