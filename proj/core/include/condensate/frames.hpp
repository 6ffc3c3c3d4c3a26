#pragma once

// Scalings between the three coordinate frames used throughout the library:
//
//   original     (v, tau, f)   f_tau = div_v( v f (1 + f^gamma) )
//   drift-free   (x, t,  rho)  rho_t - div( x rho^{1+gamma} ) = 0
//   conslaw      (xi, t, u)    u_t - sign(xi) (u^{1+gamma}/(1+gamma))_xi = 0
//
// The spatial xi-map is one-dimensional; time and amplitude maps hold in any
// dimension.

namespace condensate {

struct GammaConfig {
  double gamma = 1.0;
  int dim = 1;

  /// Throws Error(kInvalidArgument) unless gamma > 0 and dim >= 1.
  void validate() const;
  /// Throws unless dim == 1 (required by the xi-map and the measure solver).
  void require_one_dimensional() const;
};

enum class Frame { kOriginal, kDriftFree, kConsLaw };

struct FramePoint {
  double coordinate = 0.0;
  double time = 0.0;
  double amplitude = 0.0;
  Frame frame = Frame::kDriftFree;
};

// Time: t = (e^{d gamma tau} - 1) / (d gamma) and its inverse.
double time_original_to_driftfree(double tau, const GammaConfig& cfg);
double time_driftfree_to_original(double t, const GammaConfig& cfg);

/// e^{tau}: the factor x = e^{tau} v. Same for all dimensions.
double spatial_dilation(double tau);

// Density samples. The maps preserve mass: f dv = rho dx in every dimension.
FramePoint density_original_to_driftfree(const FramePoint& p, const GammaConfig& cfg);
FramePoint density_driftfree_to_original(const FramePoint& p, const GammaConfig& cfg);

// Spatial xi-map (dim == 1). x_of_xi is odd, strictly increasing, and
// x'(xi) = (gamma |xi|)^{1/gamma}.
double x_of_xi(double xi, const GammaConfig& cfg);
double xi_of_x(double x, const GammaConfig& cfg);
double dx_dxi(double xi, const GammaConfig& cfg);
/// xi'(x) = [(1+gamma)|x|]^{-1/(1+gamma)}; rejects x == 0.
double dxi_dx(double x, const GammaConfig& cfg);

/// rho(x) = xi'(x) u(xi(x)). Rejects x == 0: the origin carries the Dirac part.
double u_to_rho(double u_value, double x, const GammaConfig& cfg);
/// u(xi(x)) = rho(x) / xi'(x).
double rho_to_u(double rho_value, double x, const GammaConfig& cfg);

}  // namespace condensate
