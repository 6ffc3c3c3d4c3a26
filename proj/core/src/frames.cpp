#include "condensate/frames.hpp"

#include <cmath>
#include <string>

#include "condensate/errors.hpp"

namespace condensate {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kBlowUpReached: return "BlowUpReached";
    case ErrorKind::kZeroDatum: return "ZeroDatum";
    case ErrorKind::kNotSmoothRegime: return "NotSmoothRegime";
    case ErrorKind::kNoBracket: return "NoBracket";
    case ErrorKind::kSupportOverflow: return "SupportOverflow";
    case ErrorKind::kCflViolation: return "CflViolation";
    case ErrorKind::kTimeMismatch: return "TimeMismatch";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Unknown";
}

void GammaConfig::validate() const {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw Error(ErrorKind::kInvalidArgument,
                "gamma must be a finite positive number, got " + std::to_string(gamma));
  }
  if (dim < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "dimension must be >= 1, got " + std::to_string(dim));
  }
}

void GammaConfig::require_one_dimensional() const {
  validate();
  if (dim != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "operation is one-dimensional, got dim = " + std::to_string(dim));
  }
}

double time_original_to_driftfree(double tau, const GammaConfig& cfg) {
  const double k = cfg.dim * cfg.gamma;
  return std::expm1(k * tau) / k;
}

double time_driftfree_to_original(double t, const GammaConfig& cfg) {
  const double k = cfg.dim * cfg.gamma;
  return std::log1p(k * t) / k;
}

double spatial_dilation(double tau) { return std::exp(tau); }

FramePoint density_original_to_driftfree(const FramePoint& p, const GammaConfig& cfg) {
  if (p.frame != Frame::kOriginal) {
    throw Error(ErrorKind::kInvalidArgument, "expected a point in the original frame");
  }
  const double tau = p.time;
  return FramePoint{
      .coordinate = std::exp(tau) * p.coordinate,
      .time = time_original_to_driftfree(tau, cfg),
      .amplitude = std::exp(-cfg.dim * tau) * p.amplitude,
      .frame = Frame::kDriftFree,
  };
}

FramePoint density_driftfree_to_original(const FramePoint& p, const GammaConfig& cfg) {
  if (p.frame != Frame::kDriftFree) {
    throw Error(ErrorKind::kInvalidArgument, "expected a point in the drift-free frame");
  }
  const double tau = time_driftfree_to_original(p.time, cfg);
  return FramePoint{
      .coordinate = std::exp(-tau) * p.coordinate,
      .time = tau,
      .amplitude = std::exp(cfg.dim * tau) * p.amplitude,
      .frame = Frame::kOriginal,
  };
}

double x_of_xi(double xi, const GammaConfig& cfg) {
  const double g = cfg.gamma;
  const double mag = std::pow(g * std::abs(xi), (1.0 + g) / g) / (1.0 + g);
  return std::copysign(mag, xi);
}

double xi_of_x(double x, const GammaConfig& cfg) {
  const double g = cfg.gamma;
  const double mag = std::pow((1.0 + g) * std::abs(x), g / (1.0 + g)) / g;
  return std::copysign(mag, x);
}

double dx_dxi(double xi, const GammaConfig& cfg) {
  return std::pow(cfg.gamma * std::abs(xi), 1.0 / cfg.gamma);
}

double dxi_dx(double x, const GammaConfig& cfg) {
  if (x == 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "xi'(x) is singular at x = 0; the origin carries the concentrated mass");
  }
  const double g = cfg.gamma;
  return std::pow((1.0 + g) * std::abs(x), -1.0 / (1.0 + g));
}

double u_to_rho(double u_value, double x, const GammaConfig& cfg) {
  return dxi_dx(x, cfg) * u_value;
}

double rho_to_u(double rho_value, double x, const GammaConfig& cfg) {
  return rho_value / dxi_dx(x, cfg);
}

}  // namespace condensate
