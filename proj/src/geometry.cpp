#include "fisher_modes/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fisher_modes/errors.hpp"

namespace fisher_modes {

MetricSpec MetricSpec::minkowski(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("metric: speed of light must be positive");
  return MetricSpec(MetricKind::MinkowskiSpherical, 0.0, c);
}

MetricSpec MetricSpec::schwarzschild(double r_s, double c) {
  if (!(r_s >= 0.0) || !std::isfinite(r_s)) {
    throw DomainError("metric: Schwarzschild radius must be finite and >= 0");
  }
  if (r_s == 0.0) return minkowski(c);
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("metric: speed of light must be positive");
  return MetricSpec(MetricKind::Schwarzschild, r_s, c);
}

double MetricSpec::lapse_sq(double r) const {
  if (!(r > r_s_) || !std::isfinite(r)) {
    throw HorizonError("radius r=" + std::to_string(r) + " not outside the horizon r_s=" +
                       std::to_string(r_s_));
  }
  if (kind_ == MetricKind::MinkowskiSpherical) return 1.0;
  return (r - r_s_) / r;
}

std::array<double, 4> metric_diag(const MetricSpec& spec, const CoordPoint& p) {
  const double x = spec.lapse_sq(p.r);
  const double s = std::sin(p.theta);
  const double r2 = p.r * p.r;
  return {-x, 1.0 / x, r2, r2 * s * s};
}

double volume_weight(const MetricSpec& spec, const CoordPoint& p) {
  spec.lapse_sq(p.r);  // domain check only; the lapse factors cancel
  return p.r * p.r * std::sin(p.theta);
}

std::array<double, 4> gradient_weights(const MetricSpec& spec, const CoordPoint& p) {
  const double x = spec.lapse_sq(p.r);
  const double s = std::sin(p.theta);
  if (p.theta <= 0.0 || p.theta >= std::numbers::pi || s == 0.0) {
    throw SingularPointError("gradient weight for phi is singular at theta=" + std::to_string(p.theta));
  }
  return {1.0 / std::sqrt(x), std::sqrt(x), 1.0 / p.r, 1.0 / (p.r * s)};
}

double local_energy_sq(const MetricSpec& spec, double r, double energy) {
  return spec.lapse_sq(r) * energy * energy;
}

}  // namespace fisher_modes
