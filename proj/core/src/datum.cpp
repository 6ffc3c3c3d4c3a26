#include "condensate/datum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <utility>

#include "condensate/errors.hpp"

namespace condensate {
namespace {

constexpr std::array<double, 4> kGaussNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kGaussWeights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

// Relative floor below which interior values count as roundoff, not vacuum.
constexpr double kVacuumTolerance = 1e-12;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, what);
}

void check_breakpoints(const std::vector<double>& b) {
  require(b.size() >= 2, "datum needs at least two breakpoints");
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    require(std::isfinite(b[i]) && std::isfinite(b[i + 1]) && b[i] < b[i + 1],
            "datum breakpoints must be finite and strictly increasing");
  }
}

}  // namespace

double gauss_legendre8(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t k = 0; k < kGaussNodes.size(); ++k) {
    const double dx = half * kGaussNodes[k];
    acc += kGaussWeights[k] * (f(mid - dx) + f(mid + dx));
  }
  return acc * half;
}

InitialDatum InitialDatum::piecewise_constant(std::vector<double> breakpoints,
                                              std::vector<double> values) {
  check_breakpoints(breakpoints);
  require(values.size() + 1 == breakpoints.size(),
          "piecewise-constant datum needs one value per interval");
  for (double v : values) require(std::isfinite(v) && v >= 0.0, "datum values must be >= 0");

  // Trim vacuum pieces at either end so the support is [first, last] nonzero.
  const double peak = *std::max_element(values.begin(), values.end());
  if (!(peak > 0.0)) throw Error(ErrorKind::kZeroDatum, "datum is identically zero");
  std::size_t first = 0;
  while (values[first] <= kVacuumTolerance * peak) ++first;
  std::size_t last = values.size() - 1;
  while (values[last] <= kVacuumTolerance * peak) --last;
  for (std::size_t i = first; i <= last; ++i) {
    require(values[i] > kVacuumTolerance * peak,
            "datum support must be connected (interior vacuum interval found)");
  }

  InitialDatum d;
  d.kind_ = Kind::kPiecewiseConstant;
  d.breaks_.assign(breakpoints.begin() + first, breakpoints.begin() + last + 2);
  d.values_.assign(values.begin() + first, values.begin() + last + 1);
  d.finalize();
  return d;
}

InitialDatum InitialDatum::piecewise_linear(std::vector<double> breakpoints,
                                            std::vector<double> values) {
  check_breakpoints(breakpoints);
  require(values.size() == breakpoints.size(),
          "piecewise-linear datum needs one value per breakpoint");
  for (double v : values) require(std::isfinite(v) && v >= 0.0, "datum values must be >= 0");
  const double peak = *std::max_element(values.begin(), values.end());
  if (!(peak > 0.0)) throw Error(ErrorKind::kZeroDatum, "datum is identically zero");

  const double tol = kVacuumTolerance * peak;
  // A piece is vacuum when both of its end values vanish.
  std::size_t first = 0;
  while (values[first] <= tol && values[first + 1] <= tol) ++first;
  std::size_t last = values.size() - 1;
  while (values[last] <= tol && values[last - 1] <= tol) --last;
  for (std::size_t i = first; i < last; ++i) {
    require(values[i] > tol || values[i + 1] > tol,
            "datum support must be connected (interior vacuum interval found)");
  }

  InitialDatum d;
  d.kind_ = Kind::kPiecewiseLinear;
  d.breaks_.assign(breakpoints.begin() + first, breakpoints.begin() + last + 1);
  d.values_.assign(values.begin() + first, values.begin() + last + 1);
  d.finalize();
  return d;
}

InitialDatum InitialDatum::example36(double gamma) {
  require(gamma > 0.0 && std::isfinite(gamma), "gamma must be positive");
  InitialDatum d = piecewise_constant({0.0, 1.0 / (1.0 + gamma)}, {1.0});
  d.kind_ = Kind::kExample36;
  return d;
}

InitialDatum InitialDatum::from_function(double lo, double hi, Profile eval, Profile deriv) {
  require(std::isfinite(lo) && std::isfinite(hi) && lo < hi, "support must be a finite interval");
  require(static_cast<bool>(eval), "profile callable is empty");
  InitialDatum d;
  d.kind_ = Kind::kFunction;
  d.breaks_ = {lo, hi};
  d.eval_ = std::move(eval);
  d.deriv_ = std::move(deriv);
  d.finalize();
  return d;
}

void InitialDatum::finalize() {
  lo_ = breaks_.front();
  hi_ = breaks_.back();
  mass_left_ = integrate(lo_, std::min(hi_, 0.0));
  mass_right_ = integrate(std::max(lo_, 0.0), hi_);

  switch (kind_) {
    case Kind::kPiecewiseConstant:
    case Kind::kExample36: {
      sup_ = *std::max_element(values_.begin(), values_.end());
      bv_ = values_.front() + values_.back();
      for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        bv_ += std::abs(values_[i + 1] - values_[i]);
      }
      break;
    }
    case Kind::kPiecewiseLinear: {
      sup_ = *std::max_element(values_.begin(), values_.end());
      bv_ = values_.front() + values_.back();
      for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
        bv_ += std::abs(values_[i + 1] - values_[i]);
      }
      break;
    }
    case Kind::kFunction: {
      constexpr int kSamples = 1 << 16;
      sup_ = 0.0;
      bv_ = 0.0;
      double prev = 0.0;
      for (int i = 0; i <= kSamples; ++i) {
        const double x = lo_ + (hi_ - lo_) * i / kSamples;
        const double v = eval_(x);
        require(std::isfinite(v) && v >= 0.0, "datum profile must be finite and >= 0");
        sup_ = std::max(sup_, v);
        bv_ += std::abs(v - prev);
        prev = v;
      }
      bv_ += prev;
      if (!(sup_ > 0.0)) throw Error(ErrorKind::kZeroDatum, "datum is identically zero");
      break;
    }
  }
}

double InitialDatum::operator()(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  switch (kind_) {
    case Kind::kPiecewiseConstant:
    case Kind::kExample36: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
      i = std::clamp<std::size_t>(i, 1, values_.size()) - 1;
      return values_[i];
    }
    case Kind::kPiecewiseLinear: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
      i = std::clamp<std::size_t>(i, 1, breaks_.size() - 1) - 1;
      const double s = (x - breaks_[i]) / (breaks_[i + 1] - breaks_[i]);
      return values_[i] + s * (values_[i + 1] - values_[i]);
    }
    case Kind::kFunction:
      return std::max(0.0, eval_(x));
  }
  return 0.0;
}

double InitialDatum::derivative(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  switch (kind_) {
    case Kind::kPiecewiseConstant:
    case Kind::kExample36:
      return 0.0;
    case Kind::kPiecewiseLinear: {
      auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
      std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
      i = std::clamp<std::size_t>(i, 1, breaks_.size() - 1) - 1;
      return (values_[i + 1] - values_[i]) / (breaks_[i + 1] - breaks_[i]);
    }
    case Kind::kFunction: {
      if (deriv_) return deriv_(x);
      const double h = 1e-6 * (hi_ - lo_);
      return ((*this)(x + h) - (*this)(x - h)) / (2.0 * h);
    }
  }
  return 0.0;
}

double InitialDatum::integrate(double a, double b) const {
  a = std::max(a, lo_);
  b = std::min(b, hi_);
  if (!(a < b)) return 0.0;
  double total = 0.0;
  // Each piece between consecutive breakpoints is polynomial (exact under the
  // Gauss rule) for the piecewise kinds; function kinds get 64 sub-panels.
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    const double pa = std::max(a, breaks_[i]);
    const double pb = std::min(b, breaks_[i + 1]);
    if (!(pa < pb)) continue;
    if (kind_ == Kind::kFunction) {
      constexpr int kPanels = 64;
      for (int k = 0; k < kPanels; ++k) {
        const double qa = pa + (pb - pa) * k / kPanels;
        const double qb = pa + (pb - pa) * (k + 1) / kPanels;
        total += gauss_legendre8([this](double x) { return (*this)(x); }, qa, qb);
      }
    } else {
      const double mid = 0.5 * (pa + pb);
      if (kind_ == Kind::kPiecewiseLinear) {
        const double s = (mid - breaks_[i]) / (breaks_[i + 1] - breaks_[i]);
        total += (pb - pa) * (values_[i] + s * (values_[i + 1] - values_[i]));
      } else {
        total += (pb - pa) * values_[i];
      }
    }
  }
  return total;
}

}  // namespace condensate
