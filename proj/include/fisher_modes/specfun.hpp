#pragma once

// Special functions in the exact conventions the separable modes use.
//
// Every routine is a template over the scalar type so it can be driven with
// `Jet` to obtain exact first and second derivatives. The double-valued entry
// points at the bottom validate arguments and are what callers normally use.

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/jet.hpp"

namespace fisher_modes {

// Orbital index pair (ell, m) with |m| <= ell.
class AngularIndex {
 public:
  AngularIndex(int ell, int m) : ell_(ell), m_(m) {
    if (ell < 0) throw DomainError("angular index: ell must be >= 0, got " + std::to_string(ell));
    if (m > ell || -m > ell) {
      throw DomainError("angular index: |m| <= ell violated (ell=" + std::to_string(ell) +
                        ", m=" + std::to_string(m) + ")");
    }
  }

  int ell() const noexcept { return ell_; }
  int m() const noexcept { return m_; }
  int abs_m() const noexcept { return m_ < 0 ? -m_ : m_; }
  double ell_term() const noexcept { return double(ell_) * double(ell_ + 1); }

  // (-1)^m for m >= 0, 1 for m < 0.
  int phase_sign() const noexcept { return (m_ > 0 && (m_ & 1)) ? -1 : 1; }

  friend bool operator==(const AngularIndex&, const AngularIndex&) = default;

 private:
  int ell_;
  int m_;
};

namespace detail {

template <class T>
T bessel_series(int ell, const T& x) {
  // j_l(x) = x^l / (2l+1)!! * sum_k (-x^2/2)^k / (k! (2l+3)(2l+5)...(2l+2k+1))
  double double_factorial = 1.0;
  for (int i = 1; i <= ell; ++i) double_factorial *= 2.0 * i + 1.0;
  const T half_sq = x * x * T(-0.5);
  T term{1.0};
  T sum{1.0};
  for (int k = 1; k < 80; ++k) {
    term *= half_sq * T(1.0 / (double(k) * (2.0 * ell + 2.0 * k + 1.0)));
    sum += term;
    if (std::abs(value_of(term)) < 1e-18 * std::abs(value_of(sum))) break;
  }
  return ipow(x, ell) * sum * T(1.0 / double_factorial);
}

template <class T>
T bessel_upward(int ell, const T& x) {
  using std::cos;
  using std::sin;
  const T s = sin(x);
  const T c = cos(x);
  T j0 = s / x;
  if (ell == 0) return j0;
  T j1 = (j0 - c) / x;
  for (int l = 1; l < ell; ++l) {
    T next = T(2.0 * l + 1.0) * j1 / x - j0;
    j0 = j1;
    j1 = next;
  }
  return j1;
}

// Miller's backward recurrence, normalized with sum_k (2k+1) j_k^2 = 1.
template <class T>
T bessel_downward(int ell, const T& x) {
  using std::sqrt;
  const int start = ell + 40 + static_cast<int>(value_of(x));
  T upper{0.0};
  T current{1e-30};
  T wanted{0.0};
  T sum_sq{0.0};
  double unnormalized_j1 = 0.0;
  for (int k = start; k >= 0; --k) {
    if (k == ell) wanted = current;
    if (k == 1) unnormalized_j1 = value_of(current);
    sum_sq += T(2.0 * k + 1.0) * current * current;
    if (k == 0) break;
    T lower = T(2.0 * k + 1.0) * current / x - upper;
    upper = current;
    current = lower;
    if (std::abs(value_of(current)) > 1e200) {
      upper *= T(1e-200);
      current *= T(1e-200);
      wanted *= T(1e-200);
      sum_sq *= T(1e-200);
      sum_sq *= T(1e-200);
    }
  }
  // The sum rule fixes the magnitude only; take the sign from whichever of
  // j_0, j_1 is further from a zero.
  const double xv = value_of(x);
  const double j0_exact = std::sin(xv) / xv;
  const double j1_exact = std::sin(xv) / (xv * xv) - std::cos(xv) / xv;
  const double agree = std::abs(j0_exact) > std::abs(j1_exact) ? j0_exact * value_of(current)
                                                               : j1_exact * unnormalized_j1;
  const T scale = T(agree >= 0.0 ? 1.0 : -1.0) / sqrt(sum_sq);
  return wanted * scale;
}

}  // namespace detail

template <class T>
T spherical_bessel_j(int ell, const T& x) {
  const double xv = value_of(x);
  if (!std::isfinite(xv)) throw DomainError("spherical_bessel_j: non-finite argument");
  if (ell < 0) throw DomainError("spherical_bessel_j: negative order");
  if (xv < 0.0) {
    const T flipped = spherical_bessel_j(ell, T(0.0) - x);
    return (ell & 1) ? T(0.0) - flipped : flipped;
  }
  if (xv < 0.5 * (ell + 1)) return detail::bessel_series(ell, x);
  if (xv >= ell) return detail::bessel_upward(ell, x);
  return detail::bessel_downward(ell, x);
}

// P_l^{|m|}(cos theta) without the Condon-Shortley phase, driven by
// cos(theta) and sin(theta) so it can be differentiated through theta.
template <class T>
T assoc_legendre_cs(int ell, int abs_m, const T& cos_t, const T& sin_t) {
  T pmm{1.0};
  for (int i = 1; i <= abs_m; ++i) pmm *= T(2.0 * i - 1.0) * sin_t;
  if (ell == abs_m) return pmm;
  T pm1 = cos_t * T(2.0 * abs_m + 1.0) * pmm;
  for (int l = abs_m + 2; l <= ell; ++l) {
    T next = (T(2.0 * l - 1.0) * cos_t * pm1 - T(double(l + abs_m - 1)) * pmm) * T(1.0 / (l - abs_m));
    pmm = pm1;
    pm1 = next;
  }
  return pm1;
}

// sqrt((2l+1)/(4 pi) * (l-|m|)!/(l+|m|)!) times the phase sign epsilon.
double harmonic_prefactor(const AngularIndex& idx);

// Theta(theta) = epsilon * N_lm * P_l^{|m|}(cos theta).
template <class T>
T polar_factor(const AngularIndex& idx, const T& theta) {
  using std::cos;
  using std::sin;
  return assoc_legendre_cs(idx.ell(), idx.abs_m(), cos(theta), sin(theta)) *
         T(harmonic_prefactor(idx));
}

// L_n^a(x) through the three-term recurrence.
template <class T>
T laguerre_recurrence(int n, double a, const T& x) {
  T prev{1.0};
  if (n == 0) return prev;
  T cur = T(1.0 + a) - x;
  for (int k = 1; k < n; ++k) {
    T next = ((T(2.0 * k + 1.0 + a) - x) * cur - T(k + a) * prev) * T(1.0 / (k + 1.0));
    prev = cur;
    cur = next;
  }
  return cur;
}

double spherical_bessel_j(int ell, double x);

// n-th positive zero (n >= 1) of j_l.
double spherical_bessel_zero(int ell, int n);

// |u| <= 1. No Condon-Shortley phase; P_l^{-m} = P_l^{m}.
double assoc_legendre(const AngularIndex& idx, double u);

// n must be a nonnegative integer; x >= 0.
double generalized_laguerre(double n, double a, double x);

// epsilon * sqrt((2l+1)/4pi (l-|m|)!/(l+|m|)!) P_l^m(cos theta) e^{i m phi}.
std::complex<double> spherical_harmonic(const AngularIndex& idx, double theta, double phi);

}  // namespace fisher_modes
