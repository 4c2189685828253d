#include <doctest.h>

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <boost/math/special_functions/spherical_harmonic.hpp>

#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/hydrogen.hpp"

using namespace fisher_modes;
constexpr double pi = std::numbers::pi;

namespace {

HydrogenState state(int n, int ell, int m, double a = 1.0) {
  HydrogenState s;
  s.n = n;
  s.idx = AngularIndex(ell, m);
  s.a = a;
  return s;
}

std::complex<double> psi322_closed(double a, const CoordPoint& p) {
  const double s = std::sin(p.theta);
  return 1.0 / (162.0 * std::sqrt(pi) * std::pow(a, 1.5)) * (p.r * p.r / (a * a)) *
         std::exp(-p.r / (3.0 * a)) * s * s * std::polar(1.0, 2.0 * p.phi);
}

// Textbook hydrogen function from Boost's associated Laguerre polynomial and
// spherical harmonic.
std::complex<double> psi_boost(const HydrogenState& st, const CoordPoint& p) {
  const int n = st.n;
  const int l = st.idx.ell();
  const double rho = 2.0 * p.r / (n * st.a);
  const double c = std::sqrt(std::pow(2.0 / (n * st.a), 3) * boost::math::factorial<double>(n - l - 1) /
                             (2.0 * n * boost::math::factorial<double>(n + l)));
  const double R = c * std::exp(-rho / 2) * std::pow(rho, l) *
                   boost::math::laguerre(unsigned(n - l - 1), unsigned(2 * l + 1), rho);
  return R * boost::math::spherical_harmonic(unsigned(l), st.idx.m(), p.theta, p.phi);
}

}  // namespace

TEST_CASE("Psi_322 reproduces the closed form") {
  const HydrogenState st = state(3, 2, 2);
  const CoordPoint p{0.0, 1.0, pi / 2, 0.0};
  const std::complex<double> v = hydrogen_psi(st, p);
  CHECK(v.real() == doctest::Approx(std::exp(-1.0 / 3.0) / (162.0 * std::sqrt(pi))).epsilon(1e-14));
  CHECK(std::abs(v.imag()) <= 1e-18);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (double a : {1.0, 0.5, 2.0}) {
    const HydrogenState sa = state(3, 2, 2, a);
    for (int i = 0; i < 200; ++i) {
      const CoordPoint q{0.0, 30 * a * u01(rng), pi * u01(rng), 2 * pi * u01(rng)};
      const std::complex<double> ref = psi322_closed(a, q);
      REQUIRE(std::abs(hydrogen_psi(sa, q) - ref) <= 1e-14 * std::max(std::abs(ref), 1e-3));
    }
  }
}

TEST_CASE("ground state and phase") {
  for (double a : {1.0, 0.3}) {
    CHECK(hydrogen_psi(state(1, 0, 0, a), CoordPoint{0.0, 0.0, 0.4, 1.0}).real() ==
          doctest::Approx(1.0 / std::sqrt(pi * a * a * a)).epsilon(1e-14));
  }
  const HydrogenState st = state(3, 2, 2);
  const double ref = std::abs(hydrogen_psi(st, CoordPoint{0.0, 2.0, 1.0, 0.0}));
  for (double phi = 0.0; phi < 2 * pi; phi += 0.37) {
    CHECK(std::abs(hydrogen_psi(st, CoordPoint{0.0, 2.0, 1.0, phi})) == doctest::Approx(ref).epsilon(1e-14));
  }
}

TEST_CASE("all states n <= 4 agree with the Boost oracle") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int n = 1; n <= 4; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int m = -l; m <= l; ++m) {
        const HydrogenState st = state(n, l, m, 1.3);
        for (int i = 0; i < 20; ++i) {
          const CoordPoint p{0.0, 20 * u01(rng), pi * u01(rng), 2 * pi * u01(rng)};
          const std::complex<double> ref = psi_boost(st, p);
          INFO("n=" << n << " l=" << l << " m=" << m << " r=" << p.r);
          REQUIRE(std::abs(hydrogen_psi(st, p) - ref) <= 1e-12 * std::max(std::abs(ref), 1e-2));
        }
      }
    }
  }
}

TEST_CASE("normalization over the 60 a n ball") {
  for (int n = 1; n <= 4; ++n) {
    for (int l = 0; l < n; ++l) {
      const HydrogenState st = state(n, l, l);
      const Domain dom = hydrogen_domain(st);
      CHECK(dom.r_max == doctest::Approx(60.0 * n).epsilon(1e-15));
      const double norm = integrate(MetricSpec::minkowski(), dom,
                                    [&](const CoordPoint& p) { return std::norm(hydrogen_psi(st, p)); });
      INFO("n=" << n << " l=" << l);
      CHECK(norm == doctest::Approx(1.0).epsilon(1e-7));
    }
  }
}

TEST_CASE("radial equation with the Coulomb multiplier") {
  for (int n = 1; n <= 4; ++n) {
    for (int l = 0; l < n; ++l) {
      const HydrogenState st = state(n, l, 0, 1.7);
      const ModeFunction mode = make_hydrogen_mode(st);
      for (double r : {0.3, 1.0, 4.0, 9.0}) {
        INFO("n=" << n << " l=" << l << " r=" << r);
        CHECK(pde_residual(mode, CoordPoint{0.0, r, 1.1, 0.3}) <= 1e-10);
      }
    }
  }
}

TEST_CASE("appendix values for (3, 2, 2)") {
  const auto t0 = std::chrono::steady_clock::now();
  const HydrogenState st = state(3, 2, 2);
  const AppendixCheck chk = appendix_fisher_check(st, hydrogen_domain(st));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  REQUIRE(chk.reference.has_value());
  CHECK(chk.integrals[0] == doctest::Approx(1.0 / 45.0).epsilon(1e-6));
  CHECK(chk.integrals[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(chk.integrals[2] == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(chk.right_sides[1] == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(chk.right_sides[2] == doctest::Approx(4.0).epsilon(1e-6));
  CHECK(chk.quarter_factor_absorbed);
  CHECK(chk.pass);
  CHECK(seconds < 5.0);
}

TEST_CASE("scale covariance in a") {
  const HydrogenState s1 = state(3, 2, 2, 1.0);
  const HydrogenState s2 = state(3, 2, 2, 2.0);
  const AppendixCheck c1 = appendix_fisher_check(s1, hydrogen_domain(s1));
  const AppendixCheck c2 = appendix_fisher_check(s2, hydrogen_domain(s2));
  CHECK(c2.integrals[0] == doctest::Approx(c1.integrals[0] / 4).epsilon(1e-8));
  CHECK(c2.integrals[1] == doctest::Approx(c1.integrals[1]).epsilon(1e-8));
  CHECK(c2.integrals[2] == doctest::Approx(c1.integrals[2]).epsilon(1e-8));
  CHECK((*c2.reference)[0] == doctest::Approx(1.0 / 180.0).epsilon(1e-15));
  CHECK(c2.pass);
}

TEST_CASE("left sides equal multiplier right sides for every state n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int m = -l; m <= l; ++m) {
        const HydrogenState st = state(n, l, m);
        const AppendixCheck chk = appendix_fisher_check(st, hydrogen_domain(st));
        INFO("n=" << n << " l=" << l << " m=" << m);
        for (int k = 0; k < 3; ++k) CHECK(chk.side_residuals[k] <= 1e-6);
        CHECK(chk.pass);
        CHECK(chk.reference.has_value() == (n == 3 && l == 2 && m == 2));
        // <1/sin^2 theta> over |Y_lm|^2 is (2l+1)/(2|m|) for m != 0, so the
        // theta integral is l(l+1) - |m|(2l+1)/2.
        const double theta_ref = l * (l + 1.0) - (m == 0 ? 0.0 : std::abs(m) * (2 * l + 1) / 2.0);
        CHECK(chk.integrals[1] == doctest::Approx(theta_ref).epsilon(1e-8));
        CHECK(chk.integrals[2] == doctest::Approx(double(m * m)).epsilon(1e-8));
      }
    }
  }
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(state(2, 2, 0).validate(), DomainError);
  CHECK_THROWS_AS(state(0, 0, 0).validate(), DomainError);
  CHECK_THROWS_AS(state(2, 1, 0, -1.0).validate(), DomainError);
  CHECK_THROWS_AS(hydrogen_psi(state(2, 2, 0), CoordPoint{}), DomainError);
}
