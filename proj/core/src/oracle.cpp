#include "condensate/oracle.hpp"

#include <algorithm>
#include <cmath>

#include "condensate/errors.hpp"

namespace condensate::oracle {
namespace {

// Mass 1/(1+gamma) pieces.

double rho_paper(double x, double t, double g) {
  if (x < 0.0 || x > 1.0 / (1.0 + g)) return 0.0;
  if (t <= 0.0) return 1.0;
  const double a = 1.0 - g * t;
  if (a > 0.0 && x <= std::pow(a, (1.0 + g) / g) / (1.0 + g)) {
    return std::pow(1.0 / a, 1.0 / g);
  }
  // Once region A is gone the fan density is unbounded at 0; the Dirac
  // weight lives there instead.
  if (x == 0.0) return 0.0;
  const double base = (std::pow((1.0 + g) * x, -g / (1.0 + g)) - 1.0) / (g * t);
  return std::pow(std::max(base, 0.0), 1.0 / g);
}

double u_paper(double xi, double t, double g) {
  if (xi < 0.0 || xi > 1.0 / g) return 0.0;
  if (t <= 0.0) return std::pow(g * xi, 1.0 / g);
  const double a = 1.0 - g * t;
  if (a > 0.0 && xi <= 1.0 / g - t) return std::pow(g * xi / a, 1.0 / g);
  return std::pow(std::max(1.0 - g * xi, 0.0) / (g * t), 1.0 / g);
}

double X_unit(double z, double t, double g) {
  z = std::clamp(z, 0.0, 1.0);
  if (t <= 0.0) return z;
  const double a = 1.0 - g * t;
  if (a > 0.0 && z <= a) return z * std::pow(a, 1.0 / g);
  const double inner = 1.0 - std::pow(g * t, 1.0 / (1.0 + g)) * std::pow(1.0 - z, g / (1.0 + g));
  return std::pow(std::max(inner, 0.0), (1.0 + g) / g);
}

}  // namespace

double ExplicitSolutionSpec::total_mass() const {
  return mass_convention == MassConvention::kUnit ? 1.0 : 1.0 / (1.0 + gamma);
}

void ExplicitSolutionSpec::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::kInvalidArgument, "oracle gamma must be positive");
  }
}

double rho_explicit(double x, double t, const ExplicitSolutionSpec& spec) {
  spec.validate();
  const double g = spec.gamma;
  if (spec.mass_convention == MassConvention::kPaper) return rho_paper(x, t, g);
  // Dilation: rho_unit(x) = rho(x / L); mass grows by L.
  return rho_paper(x / spec.length_scale(), t, g);
}

double u_explicit(double xi, double t, const ExplicitSolutionSpec& spec) {
  spec.validate();
  const double g = spec.gamma;
  if (spec.mass_convention == MassConvention::kPaper) return u_paper(xi, t, g);
  // xi(L x) = L^{g/(1+g)} xi(x) and xi'(L x) = L^{-1/(1+g)} xi'(x).
  const double lam = spec.length_scale();
  return std::pow(lam, 1.0 / (1.0 + g)) * u_paper(xi * std::pow(lam, -g / (1.0 + g)), t, g);
}

double X_explicit(double z, double t, const ExplicitSolutionSpec& spec) {
  spec.validate();
  const double g = spec.gamma;
  if (spec.mass_convention == MassConvention::kUnit) return X_unit(z, t, g);
  const double lam = spec.length_scale();
  return X_unit(z * lam, t, g) / lam;
}

double mass_explicit(double t, const ExplicitSolutionSpec& spec) {
  spec.validate();
  const double g = spec.gamma;
  if (t <= 1.0 / g) return 0.0;
  return spec.total_mass() * (1.0 - std::pow(g * t, -1.0 / g));
}

double evaluate(double coordinate, double t, const ExplicitSolutionSpec& spec) {
  switch (spec.frame) {
    case SolutionFrame::kDriftFreeX: return rho_explicit(coordinate, t, spec);
    case SolutionFrame::kConsLawXi: return u_explicit(coordinate, t, spec);
    case SolutionFrame::kPseudoInverseZ: return X_explicit(coordinate, t, spec);
  }
  return 0.0;
}

double trace_onset_time(const ExplicitSolutionSpec& spec) {
  spec.validate();
  return 1.0 / spec.gamma;
}

}  // namespace condensate::oracle
