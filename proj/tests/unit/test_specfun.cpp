#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/specfun.hpp"
#include "oracles/oracles.hpp"

using namespace fisher_modes;
constexpr double pi = std::numbers::pi;

TEST_CASE("angular index invariants") {
  CHECK_NOTHROW(AngularIndex(2, -2));
  CHECK_THROWS_AS(AngularIndex(1, 2), DomainError);
  CHECK_THROWS_AS(AngularIndex(-1, 0), DomainError);
  AngularIndex idx(3, -2);
  CHECK(idx.abs_m() == 2);
  CHECK(idx.ell_term() == 12.0);
}

TEST_CASE("spherical bessel: closed values") {
  CHECK(spherical_bessel_j(0, 0.0) == 1.0);
  CHECK(spherical_bessel_j(0, 1e-300) == doctest::Approx(1.0));
  for (int l = 1; l < 6; ++l) CHECK(spherical_bessel_j(l, 0.0) == 0.0);
  CHECK(std::abs(spherical_bessel_j(0, pi)) < 1e-16);
  CHECK_THROWS_AS(spherical_bessel_j(0, std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(spherical_bessel_j(0, INFINITY), DomainError);
  CHECK_THROWS_AS(spherical_bessel_j(-1, 1.0), DomainError);
}

TEST_CASE("spherical bessel: (2, 1.5) against the 50-digit series") {
  const double ref = oracle::bessel_series(2, 1.5);
  CHECK(std::abs(spherical_bessel_j(2, 1.5) - ref) <= 1e-12 * std::abs(ref));
}

TEST_CASE("spherical bessel: agrees with the series for l <= 8, x in (0, 40]") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ux(1e-3, 40.0);
  for (int l = 0; l <= 8; ++l) {
    for (int i = 0; i < 60; ++i) {
      const double x = ux(rng);
      const double ref = oracle::bessel_series(l, x);
      const double got = spherical_bessel_j(l, x);
      // Relative error near a zero is measured against the local envelope.
      const double envelope = std::max(std::abs(ref), 1e-3 / std::max(1.0, x));
      INFO("l=" << l << " x=" << x);
      CHECK(std::abs(got - ref) <= 1e-10 * envelope);
    }
  }
}

TEST_CASE("spherical bessel: matches libstdc++ sph_bessel and parity") {
  for (int l = 0; l <= 12; ++l) {
    for (double x : {0.05, 0.7, 3.3, 11.0, 27.5, 80.0}) {
      const double ref = std::sph_bessel(l, x);
      CHECK(spherical_bessel_j(l, x) == doctest::Approx(ref).epsilon(1e-10).scale(1e-3 / x));
      CHECK(spherical_bessel_j(l, -x) == (l % 2 ? -1.0 : 1.0) * spherical_bessel_j(l, x));
    }
  }
}

TEST_CASE("spherical bessel: zeros match J_{l+1/2} zeros") {
  for (int l = 0; l <= 6; ++l) {
    for (int n = 1; n <= 5; ++n) {
      const double z = spherical_bessel_zero(l, n);
      CHECK(z == doctest::Approx(oracle::bessel_zero(l, n)).epsilon(1e-13));
    }
  }
  CHECK(spherical_bessel_zero(0, 1) == doctest::Approx(pi).epsilon(1e-15));
  CHECK_THROWS_AS(spherical_bessel_zero(0, 0), DomainError);
}

TEST_CASE("spherical bessel: ODE residual x^2 y'' + 2x y' + (x^2 - l(l+1)) y = 0") {
  for (int l = 0; l <= 6; ++l) {
    for (double x = 0.3; x < 30.0; x += 1.7) {
      const Jet y = spherical_bessel_j(l, Jet::variable(x));
      const double res = x * x * y.d2 + 2 * x * y.d1 + (x * x - l * (l + 1.0)) * y.v;
      CHECK(std::abs(res) <= 1e-11 * std::max(1.0, x * x));
    }
  }
}

TEST_CASE("assoc legendre: closed values and Rodrigues oracle") {
  for (double u : {-1.0, -0.4, 0.0, 0.3, 1.0}) CHECK(assoc_legendre(AngularIndex(0, 0), u) == 1.0);
  CHECK(assoc_legendre(AngularIndex(1, 0), 0.3) == doctest::Approx(0.3).epsilon(1e-15));
  for (double u : {-1.0, 0.0, 0.5}) {
    CHECK(assoc_legendre(AngularIndex(2, 2), u) == doctest::Approx(3.0 * (1.0 - u * u)).epsilon(1e-15));
    CHECK(oracle::legendre_rodrigues(2, 2, u) == doctest::Approx(3.0 * (1.0 - u * u)).epsilon(1e-15));
  }
  for (int l = 0; l <= 6; ++l) {
    for (int m = -l; m <= l; ++m) {
      for (double u : {-0.95, -0.5, -0.1, 0.2, 0.66, 0.99}) {
        const double ref = oracle::legendre_rodrigues(l, std::abs(m), u);
        INFO("l=" << l << " m=" << m << " u=" << u);
        CHECK(assoc_legendre(AngularIndex(l, m), u) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
        CHECK(assoc_legendre(AngularIndex(l, m), u) ==
              doctest::Approx(std::assoc_legendre(l, std::abs(m), u)).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(assoc_legendre(AngularIndex(1, 0), 1.0000001), DomainError);
}

TEST_CASE("assoc legendre: orthogonality for l != l' <= 6") {
  boost::math::quadrature::gauss<double, 30> rule;
  for (int m = 0; m <= 6; ++m) {
    for (int l = m; l <= 6; ++l) {
      for (int k = l + 1; k <= 6; ++k) {
        const double ip = rule.integrate(
            [&](double u) {
              return assoc_legendre(AngularIndex(l, m), u) * assoc_legendre(AngularIndex(k, m), u);
            },
            -1.0, 1.0);
        CHECK(std::abs(ip) <= 1e-10);
      }
    }
  }
}

TEST_CASE("laguerre: closed values and explicit-sum oracle") {
  CHECK(generalized_laguerre(0, 0.7, 3.0) == 1.0);
  CHECK(generalized_laguerre(1, 0.7, 3.0) == doctest::Approx(1.0 + 0.7 - 3.0).epsilon(1e-15));
  // L_3^a(x) = [(a+1)(a+2)(a+3) - 3(a+2)(a+3) x + 3(a+3) x^2 - x^3] / 6
  const double a = 0.5;
  const double x = 2.0;
  const double cubic =
      ((a + 1) * (a + 2) * (a + 3) - 3 * (a + 2) * (a + 3) * x + 3 * (a + 3) * x * x - x * x * x) / 6;
  CHECK(std::abs(generalized_laguerre(3, 0.5, 2.0) - cubic) <= 1e-13 * std::abs(cubic));
  CHECK(std::abs(oracle::laguerre_explicit(3, 0.5, 2.0) - cubic) <= 1e-13 * std::abs(cubic));
  for (int n = 0; n <= 8; ++n) {
    for (double aa : {0.5, 1.5, 2.5, 5.0}) {
      for (double xx : {0.0, 0.3, 1.7, 6.0, 14.0}) {
        const double ref = oracle::laguerre_explicit(n, aa, xx);
        CHECK(generalized_laguerre(n, aa, xx) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
      }
    }
  }
  CHECK_THROWS_AS(generalized_laguerre(1.5, 0.5, 1.0), UnsupportedIndexError);
  CHECK_THROWS_AS(generalized_laguerre(-1, 0.5, 1.0), UnsupportedIndexError);
  CHECK_THROWS_AS(generalized_laguerre(2, 0.5, -1.0), DomainError);
}

TEST_CASE("laguerre: ODE residual by finite differences at 20 points") {
  for (int n : {1, 3, 6}) {
    for (double a : {0.5, 2.5}) {
      double ymax = 0.0;
      double worst = 0.0;
      for (int i = 1; i <= 20; ++i) {
        const double x = 0.5 * i;
        const double h = 1e-4;
        const double y = generalized_laguerre(n, a, x);
        const double yp = (generalized_laguerre(n, a, x + h) - generalized_laguerre(n, a, x - h)) / (2 * h);
        const double ypp =
            (generalized_laguerre(n, a, x + h) - 2 * y + generalized_laguerre(n, a, x - h)) / (h * h);
        worst = std::max(worst, std::abs(x * ypp + (a + 1 - x) * yp + n * y));
        ymax = std::max(ymax, std::abs(y));
      }
      CHECK(worst <= 1e-6 * ymax);
    }
  }
}

TEST_CASE("spherical harmonic: constant mode, normalization, sign convention") {
  const auto y00 = spherical_harmonic(AngularIndex(0, 0), 0.4, 2.0);
  CHECK(y00.real() == doctest::Approx(1.0 / std::sqrt(4 * pi)).epsilon(1e-15));
  CHECK(y00.imag() == 0.0);

  const auto p = spherical_harmonic(AngularIndex(1, 1), pi / 2, 0.0);
  const auto q = spherical_harmonic(AngularIndex(1, -1), pi / 2, 0.0);
  CHECK(p.real() == doctest::Approx(-q.real()).epsilon(1e-15));
  CHECK(std::abs(p) == doctest::Approx(std::abs(q)).epsilon(1e-15));

  // For m >= 0 the convention coincides with the textbook one, which libstdc++
  // implements as sph_legendre.
  for (int l = 0; l <= 5; ++l) {
    for (int m = 0; m <= l; ++m) {
      const double th = 0.83;
      CHECK(spherical_harmonic(AngularIndex(l, m), th, 0.0).real() ==
            doctest::Approx(std::sph_legendre(l, m, th)).epsilon(1e-12).scale(1e-12));
    }
  }
}

TEST_CASE("spherical harmonic: unit norm on the sphere for l <= 5") {
  boost::math::quadrature::gauss<double, 20> rule;
  for (int l = 0; l <= 5; ++l) {
    for (int m = -l; m <= l; ++m) {
      const AngularIndex idx(l, m);
      const double polar = rule.integrate(
          [&](double u) { return std::norm(spherical_harmonic(idx, std::acos(u), 0.3)); }, -1.0, 1.0);
      CHECK(2 * pi * polar == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
  // |Y_22|^2 integrated in (theta, phi) directly.
  const double total = rule.integrate(
      [&](double th) {
        return std::sin(th) *
               boost::math::quadrature::gauss<double, 20>::integrate(
                   [&](double ph) { return std::norm(spherical_harmonic(AngularIndex(2, 2), th, ph)); },
                   0.0, 2 * pi);
      },
      0.0, pi);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(spherical_harmonic(AngularIndex(1, 0), -0.1, 0.0), DomainError);
}
