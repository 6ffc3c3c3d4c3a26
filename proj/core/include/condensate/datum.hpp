#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace condensate {

/// Nonnegative, compactly supported initial density f_I with connected
/// support [support_lo, support_hi]. In dimension d >= 2 the same object is
/// read as a radial profile f_I(r) on r >= 0.
class InitialDatum {
 public:
  using Profile = std::function<double(double)>;

  enum class Kind { kPiecewiseConstant, kPiecewiseLinear, kExample36, kFunction };

  /// values[i] is the density on [breakpoints[i], breakpoints[i+1]).
  static InitialDatum piecewise_constant(std::vector<double> breakpoints,
                                         std::vector<double> values);
  /// values[i] is the density at breakpoints[i]; linear in between, zero
  /// outside [breakpoints.front(), breakpoints.back()].
  static InitialDatum piecewise_linear(std::vector<double> breakpoints,
                                       std::vector<double> values);
  /// Indicator of [0, 1/(1+gamma)], mass 1/(1+gamma).
  static InitialDatum example36(double gamma);
  /// Arbitrary profile on [lo, hi]. Without an analytic derivative a centered
  /// difference with h = 1e-6 (hi - lo) is used.
  static InitialDatum from_function(double lo, double hi, Profile eval, Profile deriv = {});

  double operator()(double x) const;
  double derivative(double x) const;

  /// Exact for the piecewise kinds; composite Gauss-Legendre otherwise.
  double integrate(double a, double b) const;

  double support_lo() const { return lo_; }
  double support_hi() const { return hi_; }
  double mass() const { return mass_left_ + mass_right_; }
  double mass_left() const { return mass_left_; }
  double mass_right() const { return mass_right_; }
  double sup_value() const { return sup_; }
  double bv_bound() const { return bv_; }
  Kind kind() const { return kind_; }

  /// Points where the profile or its derivative may jump (including the
  /// support edges). Quadrature splits at these.
  std::span<const double> breakpoints() const { return breaks_; }
  std::span<const double> values() const { return values_; }

 private:
  InitialDatum() = default;
  void finalize();

  Kind kind_ = Kind::kFunction;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> breaks_;
  std::vector<double> values_;
  Profile eval_;
  Profile deriv_;
  double mass_left_ = 0.0;
  double mass_right_ = 0.0;
  double sup_ = 0.0;
  double bv_ = 0.0;
};

/// 8-point Gauss-Legendre rule on [a, b].
double gauss_legendre8(const std::function<double(double)>& f, double a, double b);

}  // namespace condensate
