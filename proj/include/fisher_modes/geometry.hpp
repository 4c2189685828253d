#pragma once

#include <array>

namespace fisher_modes {

enum class MetricKind { MinkowskiSpherical, Schwarzschild };

// Diagonal static spherically symmetric metric. Natural units: c = 1 unless
// configured; tau = c t, so c only enters through dispersion relations.
class MetricSpec {
 public:
  static MetricSpec minkowski(double c = 1.0);
  // r_s = 0 yields the Minkowski metric.
  static MetricSpec schwarzschild(double r_s, double c = 1.0);

  MetricKind kind() const noexcept { return kind_; }
  double r_s() const noexcept { return r_s_; }
  double c() const noexcept { return c_; }

  // 1 - r_s/r computed as (r - r_s)/r. Throws HorizonError for r <= r_s.
  double lapse_sq(double r) const;

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

 private:
  MetricSpec(MetricKind kind, double r_s, double c) : kind_(kind), r_s_(r_s), c_(c) {}

  MetricKind kind_;
  double r_s_;
  double c_;
};

struct CoordPoint {
  double tau = 0.0;
  double r = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

enum Coord : int { kTau = 0, kR = 1, kTheta = 2, kPhi = 3 };

// (g_tautau, g_rr, g_thetatheta, g_phiphi).
std::array<double, 4> metric_diag(const MetricSpec& spec, const CoordPoint& p);

// sqrt(-det g) = r^2 sin(theta) for both metrics.
double volume_weight(const MetricSpec& spec, const CoordPoint& p);

// Positive factors w_mu with (nabla_mu Psi) = w_mu d_mu Psi (up to the unit
// phase on tau); w_mu^2 = |g^{mu mu}|.
std::array<double, 4> gradient_weights(const MetricSpec& spec, const CoordPoint& p);

// E_local^2 = (1 - r_s/r) E^2 for a static observer at r.
double local_energy_sq(const MetricSpec& spec, double r, double energy);

}  // namespace fisher_modes
