#include "fisher_modes/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace fisher_modes {

double harmonic_prefactor(const AngularIndex& idx) {
  // (l-|m|)!/(l+|m|)! as a product to stay exact for moderate l.
  double ratio = 1.0;
  for (int k = idx.ell() - idx.abs_m() + 1; k <= idx.ell() + idx.abs_m(); ++k) ratio /= k;
  const double norm = std::sqrt((2.0 * idx.ell() + 1.0) / (4.0 * std::numbers::pi) * ratio);
  return idx.phase_sign() * norm;
}

double spherical_bessel_j(int ell, double x) { return spherical_bessel_j<double>(ell, x); }

double spherical_bessel_zero(int ell, int n) {
  if (ell < 0 || n < 1) {
    throw DomainError("spherical_bessel_zero: need ell >= 0 and n >= 1 (ell=" + std::to_string(ell) +
                      ", n=" + std::to_string(n) + ")");
  }
  // j_l has no zeros below l + 1/2, and consecutive zeros are at least pi/2
  // apart, so a 0.25 scan step cannot skip a sign change.
  constexpr double step = 0.25;
  double lo = std::max(1e-3, double(ell));
  double f_lo = spherical_bessel_j(ell, lo);
  int found = 0;
  while (true) {
    const double hi = lo + step;
    const double f_hi = spherical_bessel_j(ell, hi);
    if (f_lo == 0.0 && lo > 1e-3) {
      if (++found == n) return lo;
    } else if ((f_lo < 0.0) != (f_hi < 0.0) && f_hi != 0.0) {
      if (++found == n) {
        double a = lo;
        double b = hi;
        double fa = f_lo;
        for (int it = 0; it < 200 && b - a > 2.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
          const double mid = 0.5 * (a + b);
          const double fm = spherical_bessel_j(ell, mid);
          if (fm == 0.0) return mid;
          if ((fm < 0.0) == (fa < 0.0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
        return 0.5 * (a + b);
      }
    }
    lo = hi;
    f_lo = f_hi;
  }
}

double assoc_legendre(const AngularIndex& idx, double u) {
  if (!(std::abs(u) <= 1.0)) {
    throw DomainError("assoc_legendre: argument outside [-1, 1]: " + std::to_string(u));
  }
  const double s = std::sqrt((1.0 - u) * (1.0 + u));
  return assoc_legendre_cs(idx.ell(), idx.abs_m(), u, s);
}

double generalized_laguerre(double n, double a, double x) {
  if (!std::isfinite(n) || !std::isfinite(a) || !std::isfinite(x)) {
    throw DomainError("generalized_laguerre: non-finite argument");
  }
  if (n < 0.0 || std::floor(n) != n) {
    throw UnsupportedIndexError("generalized_laguerre: index must be a nonnegative integer, got " +
                                std::to_string(n));
  }
  if (x < 0.0) throw DomainError("generalized_laguerre: x must be >= 0");
  return laguerre_recurrence(static_cast<int>(n), a, x);
}

std::complex<double> spherical_harmonic(const AngularIndex& idx, double theta, double phi) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw DomainError("spherical_harmonic: theta outside [0, pi]");
  }
  if (!std::isfinite(phi)) throw DomainError("spherical_harmonic: non-finite phi");
  const double polar = polar_factor(idx, theta);
  return std::polar(1.0, idx.m() * phi) * polar;
}

}  // namespace fisher_modes
