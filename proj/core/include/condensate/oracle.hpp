#pragma once

#include "condensate/frames.hpp"

namespace condensate::oracle {

// Closed-form solutions for the datum f_I = indicator of [0, 1/(1+gamma)].
// Under kPaper the mass is 1/(1+gamma). The unit convention is the
// dilation x -> (1+gamma) x with masses multiplied by (1+gamma); the equation
// is invariant under it, so time is unchanged.

enum class SolutionFrame { kDriftFreeX, kConsLawXi, kPseudoInverseZ };
enum class MassConvention { kPaper, kUnit };

struct ExplicitSolutionSpec {
  double gamma = 1.0;
  SolutionFrame frame = SolutionFrame::kDriftFreeX;
  MassConvention mass_convention = MassConvention::kPaper;

  /// x_unit = length_scale * x_kpaper.
  double length_scale() const { return 1.0 + gamma; }
  /// mass_unit = mass_scale * mass_kpaper.
  double mass_scale() const { return 1.0 + gamma; }
  /// Total mass in this convention.
  double total_mass() const;

  /// Throws Error(kInvalidArgument) unless gamma > 0.
  void validate() const;
};

/// rho(x, t). Region A is x <= (1 - gamma t)^{(1+gamma)/gamma} / (1+gamma)
/// (kPaper), the fan extends to 1/(1+gamma), zero beyond.
double rho_explicit(double x, double t, const ExplicitSolutionSpec& spec);

/// u(xi, t): ((gamma xi)/(1 - gamma t))^{1/gamma} for xi <= 1/gamma - t,
/// ((1 - gamma xi)/(gamma t))^{1/gamma} up to xi = 1/gamma, zero beyond.
double u_explicit(double xi, double t, const ExplicitSolutionSpec& spec);

/// Pseudo-inverse X(z, t). Native in the unit convention on z in [0, 1]; the
/// kPaper convention returns X_unit((1+gamma) z) / (1+gamma).
double X_explicit(double z, double t, const ExplicitSolutionSpec& spec);

/// Dirac weight at the origin: max(0, 1 - (gamma t)^{-1/gamma}) times the
/// total mass of the convention.
double mass_explicit(double t, const ExplicitSolutionSpec& spec);

/// Dispatches on spec.frame: rho, u or X at the given coordinate.
double evaluate(double coordinate, double t, const ExplicitSolutionSpec& spec);

/// Time at which the trace u(0+, t) switches on: 1/gamma.
double trace_onset_time(const ExplicitSolutionSpec& spec);

}  // namespace condensate::oracle
