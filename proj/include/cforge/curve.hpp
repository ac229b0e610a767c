#pragma once

#include <functional>
#include <string>
#include <utility>

namespace cforge {

/// A real function on [0,1] used as a normalized provider cost.
class Curve {
 public:
  Curve() = default;
  Curve(std::string description, std::function<double(double)> fn)
      : description_(std::move(description)), fn_(std::move(fn)) {}

  double operator()(double x) const { return fn_(x); }
  const std::string& description() const { return description_; }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  std::string description_;
  std::function<double(double)> fn_;
};

/// Central difference (f(x+h) - f(x-h)) / 2h on [0,1]. Where x - h or x + h
/// leaves the interval, second-order one-sided differences at three steps
/// are combined by Aitken extrapolation.
double derivative(const std::function<double(double)>& f, double x, double h = 1e-6);

inline double derivative(const Curve& curve, double x, double h = 1e-6) {
  return derivative([&curve](double t) { return curve(t); }, x, h);
}

/// True when f(k/(points-1)) never increases by more than `slack`.
bool nonincreasing_on_grid(const Curve& curve, int points = 1001, double slack = 1e-12);

}  // namespace cforge
