#include "condensate/characteristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "condensate/errors.hpp"

namespace condensate::characteristics {
namespace {

constexpr int kShockSamples = 4096;
constexpr double kShockRefineTol = 1e-6;
constexpr double kFootTol = 1e-12;

void require_radial_foot(double x0, const GammaConfig& cfg) {
  if (cfg.dim >= 2 && x0 < 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "radial data in dim >= 2 take a nonnegative radius, got " + std::to_string(x0));
  }
}

// Explicit zero in t of the reduced 1-D Jacobian at foot x0, or +inf.
double jacobian_zero(double x0, const InitialDatum& datum, double gamma) {
  const double f = datum(x0);
  if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
  const double fg = std::pow(f, gamma);
  const double dfg = gamma * std::pow(f, gamma - 1.0) * datum.derivative(x0);
  const double push = (1.0 + gamma) * x0 * dfg;
  if (!(push > 0.0)) return std::numeric_limits<double>::infinity();
  return 1.0 / (gamma * fg + push);
}

}  // namespace

CharacteristicState advance(double x0, double t, const InitialDatum& datum,
                            const GammaConfig& cfg) {
  cfg.validate();
  require_radial_foot(x0, cfg);
  if (t < 0.0) throw Error(ErrorKind::kInvalidArgument, "time must be >= 0");
  const double f = datum(x0);
  if (!(f > 0.0)) return {.x0 = x0, .position = x0, .value = 0.0, .time = t};

  const double g = cfg.gamma;
  const double gd = g * cfg.dim;
  const double s = 1.0 - gd * std::pow(f, g) * t;
  if (!(s > 0.0)) {
    throw Error(ErrorKind::kBlowUpReached,
                "characteristic from x0 = " + std::to_string(x0) + " blows up before t = " +
                    std::to_string(t));
  }
  return {.x0 = x0,
          .position = x0 * std::pow(s, (1.0 + g) / gd),
          .value = f / std::pow(s, 1.0 / g),
          .time = t};
}

double blow_up_time(const InitialDatum& datum, const GammaConfig& cfg) {
  cfg.validate();
  const double sup = datum.sup_value();
  if (!(sup > 0.0)) throw Error(ErrorKind::kZeroDatum, "blow-up time of a zero datum");
  return 1.0 / (cfg.gamma * cfg.dim * std::pow(sup, cfg.gamma));
}

ShockReport first_shock_time(const InitialDatum& datum, const GammaConfig& cfg) {
  cfg.require_one_dimensional();
  const double g = cfg.gamma;
  const double lo = datum.support_lo();
  const double hi = datum.support_hi();
  const double h = (hi - lo) / kShockSamples;

  double best = std::numeric_limits<double>::infinity();
  int best_k = -1;
  for (int k = 0; k < kShockSamples; ++k) {
    const double x0 = lo + (k + 0.5) * h;
    const double tz = jacobian_zero(x0, datum, g);
    if (tz < best) {
      best = tz;
      best_k = k;
    }
  }

  ShockReport report;
  if (best_k < 0) return report;

  // Shrink a bracket around the best sample, keeping the better half.
  double a = std::max(lo, lo + (best_k - 0.5) * h);
  double b = std::min(hi, lo + (best_k + 1.5) * h);
  double foot = lo + (best_k + 0.5) * h;
  double prev = best;
  for (int iter = 0; iter < 200; ++iter) {
    const double m1 = a + 0.25 * (b - a);
    const double m2 = a + 0.75 * (b - a);
    const double t1 = jacobian_zero(m1, datum, g);
    const double t2 = jacobian_zero(m2, datum, g);
    if (t1 <= t2) {
      b = 0.5 * (a + b);
      if (t1 < best) { best = t1; foot = m1; }
    } else {
      a = 0.5 * (a + b);
      if (t2 < best) { best = t2; foot = m2; }
    }
    if (std::abs(prev - best) < kShockRefineTol && (b - a) < kShockRefineTol * (hi - lo)) break;
    prev = best;
  }

  if (best < blow_up_time(datum, cfg)) {
    report.time = best;
    report.foot = foot;
  }
  return report;
}

double smooth_validity_time(const InitialDatum& datum, const GammaConfig& cfg) {
  const double tb = blow_up_time(datum, cfg);
  if (cfg.dim != 1) return tb;
  const ShockReport shock = first_shock_time(datum, cfg);
  return shock.time ? std::min(tb, *shock.time) : tb;
}

SmoothEvaluator::SmoothEvaluator(InitialDatum datum, GammaConfig cfg)
    : datum_(std::move(datum)), cfg_(cfg) {
  cfg_.validate();
  blow_up_ = blow_up_time(datum_, cfg_);
  validity_ = smooth_validity_time(datum_, cfg_);
}

double SmoothEvaluator::image(double x0, double t) const {
  const double f = datum_(x0);
  if (!(f > 0.0)) return x0;
  const double g = cfg_.gamma;
  const double gd = g * cfg_.dim;
  const double s = std::max(0.0, 1.0 - gd * std::pow(f, g) * t);
  return x0 * std::pow(s, (1.0 + g) / gd);
}

double SmoothEvaluator::image_slope(double x0, double t) const {
  const double f = datum_(x0);
  if (!(f > 0.0)) return 1.0;
  const double g = cfg_.gamma;
  const double gd = g * cfg_.dim;
  const double s = 1.0 - gd * std::pow(f, g) * t;
  if (!(s > 0.0)) return 0.0;
  const double e = (1.0 + g) / gd;
  const double dfg = g * std::pow(f, g - 1.0) * datum_.derivative(x0);
  return std::pow(s, e) - x0 * e * std::pow(s, e - 1.0) * gd * dfg * t;
}

double SmoothEvaluator::foot(double x, double t) const {
  if (t < 0.0) throw Error(ErrorKind::kInvalidArgument, "time must be >= 0");
  if (t >= validity_) {
    throw Error(ErrorKind::kNotSmoothRegime,
                "t = " + std::to_string(t) + " is past the classical validity time " +
                    std::to_string(validity_));
  }
  require_radial_foot(x, cfg_);
  if (t == 0.0 || x == 0.0) return x;

  const double lo = datum_.support_lo();
  const double hi = datum_.support_hi();
  // Feet on the same side of the origin as x, restricted to the support.
  double a = 0.0;
  double b = 0.0;
  if (x > 0.0) {
    if (x > hi) return x;
    a = std::max(lo, 0.0);
    b = hi;
  } else {
    if (x < lo) return x;
    a = lo;
    b = std::min(hi, 0.0);
  }
  if (!(a < b)) return x;

  // Work with an increasing map on [a, b]: g(x0) = image(x0) - x.
  double ga = image(a, t) - x;
  double gb = image(b, t) - x;
  if (ga > 0.0 || gb < 0.0) {
    // Outside the evolved support on the far side of the origin-facing edge.
    if ((x > 0.0 && ga > 0.0) || (x < 0.0 && gb < 0.0)) return x;
    throw Error(ErrorKind::kNoBracket, "no foot for x = " + std::to_string(x) +
                                           " (rarefaction region at the support edge)");
  }

  double x0 = 0.5 * (a + b);
  const double scale = std::max(std::abs(a), std::abs(b));
  for (int iter = 0; iter < 200 && (b - a) > kFootTol * scale; ++iter) {
    const double gx = image(x0, t) - x;
    if (gx == 0.0) break;
    if (gx < 0.0) {
      a = x0;
    } else {
      b = x0;
    }
    const double slope = image_slope(x0, t);
    double next = slope > 0.0 ? x0 - gx / slope : 0.5 * (a + b);
    if (!(next > a && next < b)) next = 0.5 * (a + b);
    if (std::abs(next - x0) < kFootTol * scale) {
      x0 = next;
      break;
    }
    x0 = next;
  }

  const double residual = std::abs(image(x0, t) - x);
  if (residual > 1e-9 * std::max(scale, 1e-300)) {
    throw Error(ErrorKind::kNoBracket,
                "foot-to-position map jumps over x = " + std::to_string(x) +
                    " (not covered by classical characteristics)");
  }
  return x0;
}

double SmoothEvaluator::operator()(double x, double t) const {
  const double x0 = foot(x, t);
  const double f = datum_(x0);
  if (!(f > 0.0)) return 0.0;
  const double g = cfg_.gamma;
  const double s = 1.0 - g * cfg_.dim * std::pow(f, g) * t;
  return f / std::pow(s, 1.0 / g);
}

double evaluate_smooth(double x, double t, const InitialDatum& datum, const GammaConfig& cfg) {
  return SmoothEvaluator(datum, cfg)(x, t);
}

}  // namespace condensate::characteristics
