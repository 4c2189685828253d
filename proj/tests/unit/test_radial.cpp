#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/schwarzschild_radial.hpp"

using namespace fisher_modes;

namespace {

RadialProblem bessel_problem(double r_s, int ell, double eta_p, double alpha_p_sq, double a, double b) {
  RadialProblem p;
  p.metric = MetricSpec::schwarzschild(r_s);
  p.eta_prime = eta_p;
  p.ell = ell;
  p.alpha_prime_sq = alpha_p_sq;
  p.r_start = a;
  p.r_end = b;
  const double k = std::sqrt(alpha_p_sq + eta_p * eta_p);
  p.init_value = boost::math::sph_bessel(unsigned(ell), k * a);
  p.init_slope = k * boost::math::sph_bessel_prime(unsigned(ell), k * a);
  return p;
}

// sup |R - j_l(k r)| / sup |j_l(k r)| over the solution grid.
double bessel_deviation(const RadialSolution& s) {
  const RadialProblem& p = s.problem;
  const double k = std::sqrt(p.alpha_prime_sq + p.eta_prime * p.eta_prime);
  double gap = 0.0;
  double size = 0.0;
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const double ref = boost::math::sph_bessel(unsigned(p.ell), k * s.grid[i]);
    gap = std::max(gap, std::abs(s.values[i] - ref));
    size = std::max(size, std::abs(ref));
  }
  return gap / size;
}

RadialProblem horizon_problem(double eta_p, int ell, double alpha_p_sq) {
  RadialProblem p;
  p.metric = MetricSpec::schwarzschild(1.0);
  p.eta_prime = eta_p;
  p.ell = ell;
  p.alpha_prime_sq = alpha_p_sq;
  p.r_end = 50.0;
  return p;
}

}  // namespace

TEST_CASE("r_s = 0 reproduces spherical Bessel functions on [0.5, 20]") {
  for (int ell = 0; ell <= 3; ++ell) {
    for (double a2 : {0.0, 0.5}) {
      const RadialSolution s = solve_radial(bessel_problem(0.0, ell, 1.0, a2, 0.5, 20.0), 1e-10);
      INFO("l=" << ell << " alpha'^2=" << a2);
      CHECK(bessel_deviation(s) <= 1e-6);
      CHECK(s.grid.size() >= 200);
      CHECK(s.max_residual <= 1e-6);
      CHECK(s.grid.front() == 0.5);
      CHECK(s.grid.back() == 20.0);
      for (std::size_t i = 1; i < s.grid.size(); ++i) REQUIRE(s.grid[i] > s.grid[i - 1]);
    }
  }
}

TEST_CASE("constant solution for eta' = 0, alpha'^2 = 0, l = 0 near a horizon") {
  RadialProblem p = horizon_problem(0.0, 0, 0.0);
  p.r_start = 1.001;
  p.init_value = 1.0;
  p.init_slope = 0.0;
  const RadialSolution s = solve_radial(p, 1e-10);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    REQUIRE(std::abs(s.values[i] - 1.0) <= 1e-10);
    REQUIRE(std::abs(s.slopes[i]) <= 1e-10);
  }
  CHECK(s.max_residual <= 1e-10);
}

TEST_CASE("dense output: interpolation between grid points") {
  const RadialSolution s = solve_radial(bessel_problem(0.0, 2, 1.0, 0.0, 0.5, 20.0), 1e-11);
  for (std::size_t i = 0; i + 1 < s.grid.size(); i += 7) {
    const double r = 0.5 * (s.grid[i] + s.grid[i + 1]);
    const Jet j = s.evaluate(r);
    CHECK(std::abs(j.v - boost::math::sph_bessel(2u, r)) <= 1e-8);
    CHECK(std::abs(j.d1 - boost::math::sph_bessel_prime(2u, r)) <= 1e-7);
  }
  CHECK_THROWS_AS(s.evaluate(0.4), DomainError);
  CHECK_THROWS_AS(s.evaluate(20.5), DomainError);
}

TEST_CASE("independent residual stays below 1e-6 across problem types") {
  for (double r_s : {0.0, 0.3, 1.0}) {
    for (int ell : {0, 2}) {
      for (double eta_p : {0.0, 1.0, 2.5}) {
        RadialProblem p = bessel_problem(0.0, ell, eta_p, 0.7, 1.5, 30.0);
        p.metric = MetricSpec::schwarzschild(r_s);
        const RadialSolution s = solve_radial(p, 1e-10);
        INFO("r_s=" << r_s << " l=" << ell << " eta'=" << eta_p);
        CHECK(s.max_residual <= 1e-6);
        CHECK(s.grid.size() >= 200);
      }
    }
  }
}

TEST_CASE("Frobenius exponents +- i eta' r_s from the continued complex pair") {
  // The series solution d^{i eta' r_s}(1 + c1 d) is continued numerically
  // from r = 1.00001 r_s: its real and imaginary parts are independent real
  // solutions.
  const RadialProblem base = horizon_problem(1.0, 0, 0.0);
  const double r0 = 1.00001;
  const FrobeniusData f0 = frobenius_series(base, r0);
  CHECK(f0.exponent == std::complex<double>(0.0, 1.0));
  RadialProblem re = base;
  re.r_start = r0;
  re.init_value = f0.value.real();
  re.init_slope = f0.slope.real();
  RadialProblem im = re;
  im.init_value = f0.value.imag();
  im.init_slope = f0.slope.imag();
  const RadialSolution sr = solve_radial(re, 1e-11);
  const RadialSolution si = solve_radial(im, 1e-11);
  CHECK(sr.max_residual <= 1e-6);
  CHECK(si.max_residual <= 1e-6);

  for (double d : {1e-4, 1e-3, 1e-2}) {
    const Jet a = sr.evaluate(1.0 + d);
    const Jet b = si.evaluate(1.0 + d);
    const std::complex<double> R{a.v, b.v};
    const std::complex<double> dR{a.d1, b.d1};
    const std::complex<double> log_deriv = d * dR / R;
    // d R'/R = s + c1 d/(1 + c1 d) + O(d^2) on the branch we started on ...
    const FrobeniusData f = frobenius_series(base, 1.0 + d);
    INFO("d=" << d << " log-derivative " << log_deriv);
    CHECK(std::abs(log_deriv - d * f.slope / f.value) <= 10 * d * d);
    // ... and approaches the exponent +i (never -i) at rate O(d).
    CHECK(std::abs(log_deriv - std::complex<double>(0.0, 1.0)) <= 2 * d);
    CHECK(std::abs(log_deriv - std::complex<double>(0.0, -1.0)) >= 1.9);
  }
  // Oscillatory in log(r - r_s): the real part changes sign between
  // successive log-periods 2 pi / (eta' r_s).
  const double d1 = 1e-4;
  const double d2 = d1 * std::exp(-std::numbers::pi);
  CHECK(sr.evaluate(1.0 + d1).v * frobenius_series(base, 1.0 + d2).value.real() < 0.0);
  CHECK(std::abs(frobenius_series(base, 1.0 + d2).value) == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("near_horizon_start") {
  // Regular branch: (1, 0) at leading order, c1 from the indicial recursion.
  RadialProblem p = horizon_problem(0.0, 0, 0.0);
  HorizonStart h = near_horizon_start(p, 1e-6);
  CHECK(h.r_start == doctest::Approx(1.0 + 1e-6).epsilon(1e-15));
  CHECK(h.value == 1.0);
  CHECK(h.slope == 0.0);

  // l = 1: c1 = l(l+1)/r_s = 2, so R ~ 1 + 2 d. The next-order change under
  // delta halving is exactly c1 r_s delta / 2.
  p = horizon_problem(0.0, 1, 0.0);
  const HorizonStart h1 = near_horizon_start(p, 1e-3);
  const HorizonStart h2 = near_horizon_start(p, 5e-4);
  CHECK(h1.value - h2.value == doctest::Approx(2.0 * 5e-4).epsilon(1e-12));
  CHECK(h1.slope == doctest::Approx(2.0).epsilon(1e-15));

  // Solutions started from the truncated series converge at second order in
  // delta: halving delta cuts the downstream error by ~4. (alpha'^2 != 0, or
  // 2r - 1 would be an exact polynomial solution.)
  p.alpha_prime_sq = 0.3;
  const auto downstream = [&](double delta) {
    RadialProblem q = p;
    q.r_end = 3.0;
    const HorizonStart s = near_horizon_start(q, delta);
    q.r_start = s.r_start;
    q.init_value = s.value;
    q.init_slope = s.slope;
    return solve_radial(q, 1e-12).evaluate(3.0).v;
  };
  const double ref = downstream(1e-6);
  const double e1 = std::abs(downstream(2e-3) - ref);
  const double e2 = std::abs(downstream(1e-3) - ref);
  MESSAGE("delta=2e-3 error " << e1 << ", delta=1e-3 error " << e2);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 1.7);
  CHECK(order <= 2.3);

  // eta' != 0: standing wave, bounded and oscillating in log(r - r_s).
  p = horizon_problem(2.0, 0, 0.0);
  double lo = 1.0;
  double hi = -1.0;
  for (double delta = 1e-8; delta <= 1e-2; delta *= 1.2) {
    const HorizonStart s = near_horizon_start(p, delta);
    CHECK(std::abs(s.value - std::cos(2.0 * std::log(delta))) <= 50 * delta);
    lo = std::min(lo, s.value);
    hi = std::max(hi, s.value);
  }
  CHECK(lo < -0.99);
  CHECK(hi > 0.99);

  CHECK_THROWS_AS(near_horizon_start(p, 1e-9), DomainError);
  CHECK_THROWS_AS(near_horizon_start(p, 2e-2), DomainError);
  p.metric = MetricSpec::schwarzschild(0.0);
  CHECK_THROWS_AS(near_horizon_start(p, 1e-3), DomainError);
}

TEST_CASE("Wronskian is conserved on [1.1, 50] r_s") {
  for (double eta_p : {0.0, 1.0}) {
    for (int ell : {0, 2}) {
      RadialProblem a = horizon_problem(eta_p, ell, 0.3);
      a.r_start = 1.1;
      a.init_value = 1.0;
      a.init_slope = 0.0;
      RadialProblem b = a;
      b.init_value = 0.0;
      b.init_slope = 1.0;
      const RadialSolution sa = solve_radial(a, 1e-11);
      const RadialSolution sb = solve_radial(b, 1e-11);
      const double w0 = wronskian(sa, sb, 1.1);
      CHECK(w0 == doctest::Approx(1.1 * 1.1 * (1.0 - 1.0 / 1.1)).epsilon(1e-14));
      double worst = 0.0;
      for (double r = 1.1; r <= 50.0; r += 0.0931) worst = std::max(worst, std::abs(wronskian(sa, sb, r) / w0 - 1.0));
      INFO("eta'=" << eta_p << " l=" << ell);
      CHECK(worst <= 1e-6);
    }
  }
}

TEST_CASE("Wronskian drift across the l = 2 barrier tracks rel_tol") {
  // Without oscillation both solutions ride the growing r^2 branch, so the
  // Wronskian is a difference of terms ~ 1e7 times larger than itself. The
  // drift is then set by the global error and must fall with rel_tol.
  RadialProblem a = horizon_problem(0.0, 2, 0.0);
  a.r_start = 1.1;
  a.init_value = 1.0;
  RadialProblem b = a;
  b.init_value = 0.0;
  b.init_slope = 1.0;
  double previous = INFINITY;
  for (double tol : {1e-9, 1e-10, 1e-11, 1e-12}) {
    const RadialSolution sa = solve_radial(a, tol);
    const RadialSolution sb = solve_radial(b, tol);
    const double w0 = wronskian(sa, sb, 1.1);
    double worst = 0.0;
    for (double r = 1.1; r <= 50.0; r += 0.0931) worst = std::max(worst, std::abs(wronskian(sa, sb, r) / w0 - 1.0));
    MESSAGE("rel_tol=" << tol << " relative drift " << worst);
    CHECK(worst < previous / 4);
    previous = worst;
  }
}

TEST_CASE("halving rel_tol never moves the solution away from the tightest run") {
  RadialProblem p = bessel_problem(0.0, 1, 1.0, 0.2, 1.5, 40.0);
  p.metric = MetricSpec::schwarzschild(1.0);
  const RadialSolution tight = solve_radial(p, 1e-12);
  double previous = INFINITY;
  for (double tol = 1e-4; tol >= 2e-11; tol /= 2) {
    const RadialSolution s = solve_radial(p, tol);
    double gap = 0.0;
    for (double r : tight.grid) gap = std::max(gap, std::abs(s.evaluate(r).v - tight.evaluate(r).v));
    INFO("rel_tol=" << tol << " gap=" << gap << " previous=" << previous);
    CHECK(gap <= previous);
    previous = gap;
  }
}

TEST_CASE("r_s -> 0 converges monotonically to the Bessel oracle") {
  double previous = INFINITY;
  for (double r_s : {1e-2, 1e-3, 1e-4}) {
    const double dev = bessel_deviation(solve_radial(bessel_problem(r_s, 1, 1.0, 0.0, 0.5, 20.0), 1e-11));
    MESSAGE("r_s=" << r_s << " sup deviation " << dev);
    CHECK(dev < previous);
    previous = dev;
  }
}

TEST_CASE("flat-limit deviation") {
  const auto dev = [](double r_s, double a, double b) {
    return flat_limit_deviation(bessel_problem(r_s, 0, 1.0, 0.0, a, b), 1e-11);
  };
  CHECK(dev(0.0, 2.0, 4.0) == 0.0);
  CHECK(dev(0.0, 10.0, 20.0) == 0.0);

  // On windows [R, 2R] the Schwarzschild solution carries the tortoise phase
  // eta' r_s log(r/R) relative to the flat one. At large R the relative
  // sup-norm deviation therefore tends to eta' r_s log(2)/2, independent of R.
  const double d2 = dev(0.01, 2.0, 4.0);
  const double d10 = dev(0.01, 10.0, 20.0);
  const double d100 = dev(0.01, 100.0, 200.0);
  MESSAGE("r_s=0.01: [2,4] " << d2 << ", [10,20] " << d10 << ", [100,200] " << d100);
  CHECK(d100 == doctest::Approx(0.01 * std::log(2.0) / 2).epsilon(0.02));
  CHECK(d10 == doctest::Approx(0.01 * std::log(2.0) / 2).epsilon(0.15));

  // Fixed-width windows: the accumulated phase eta' r_s log(1 + w/R) shrinks
  // like 1/R, so ten times further out the deviation drops well over 2x.
  const double near = dev(0.01, 20.0, 30.0);
  const double far = dev(0.01, 200.0, 210.0);
  MESSAGE("r_s=0.01: [20,30] " << near << ", [200,210] " << far);
  CHECK(near / far >= 2.0);

  CHECK_THROWS_AS(dev(0.1, 5.0, 20.0), DomainError);
}

TEST_CASE("preconditions and error mapping") {
  RadialProblem p = horizon_problem(1.0, 0, 0.0);
  p.r_start = 0.5;
  CHECK_THROWS_AS(solve_radial(p, 1e-8), HorizonError);
  p.r_start = 1.0;
  CHECK_THROWS_AS(solve_radial(p, 1e-8), HorizonError);
  p.r_start = 2.0;
  p.r_end = 2.0;
  CHECK_THROWS_AS(solve_radial(p, 1e-8), DomainError);
  p.r_end = 10.0;
  CHECK_THROWS_AS(solve_radial(p, 1e-3), DomainError);
  CHECK_THROWS_AS(solve_radial(p, 1e-13), DomainError);
  p.alpha_prime_sq = NAN;
  CHECK_THROWS_AS(solve_radial(p, 1e-8), DomainError);

  // Too close to the horizon for the log-oscillation to be resolved.
  p = horizon_problem(1.0, 0, 0.0);
  p.r_start = 1.0 + 1e-14;
  p.init_value = 1.0;
  try {
    solve_radial(p, 1e-12);
    FAIL("expected NearHorizonError");
  } catch (const NearHorizonError& e) {
    CHECK(std::string(e.what()).find("larger r_start") != std::string::npos);
  }

  // Strongly evanescent: e^{1000 r} overflows.
  p = RadialProblem{};
  p.metric = MetricSpec::minkowski();
  p.r_start = 1.0;
  p.r_end = 10.0;
  p.alpha_prime_sq = -1e6;
  p.init_value = 1.0;
  try {
    solve_radial(p, 1e-8);
    FAIL("expected BlowUpError");
  } catch (const BlowUpError& e) {
    CHECK(e.last_good_r() > 1.0);
    CHECK(e.last_good_r() < 10.0);
  }
}

TEST_CASE("CSV export") {
  const RadialSolution s = solve_radial(bessel_problem(0.5, 1, 1.0, 0.0, 2.0, 6.0), 1e-9);
  std::ostringstream os;
  write_radial_csv(os, s);
  std::istringstream is(os.str());
  std::string header;
  std::string columns;
  std::getline(is, header);
  std::getline(is, columns);
  CHECK(header.rfind("# r_s=0.5,eta_prime=1,ell=1,alpha_prime_sq=0,r_start=2,r_end=6,", 0) == 0);
  CHECK(header.find("rel_tol=") != std::string::npos);
  CHECK(columns == "r,R,dR/dr,residual");
  std::size_t rows = 0;
  std::string line;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == s.grid.size());
}

TEST_CASE("Schwarzschild mode wrapper") {
  const RadialSolution s = solve_radial(bessel_problem(0.5, 2, 1.0, 0.0, 2.0, 12.0), 1e-10);
  const ModeFunction mode = make_schwarzschild_mode(s, 1);
  CHECK(mode.spec().family == ModeFamily::SchwarzschildNumeric);
  CHECK(mode.metric().r_s() == 0.5);
  const double ip = integrate(mode.metric(), mode.support(),
                              [&](const CoordPoint& p) { return std::norm(mode(p)); });
  CHECK(ip == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pde_residual(mode, CoordPoint{0.3, 5.0, 1.0, 2.0}) <= 1e-6);
  CHECK_THROWS_AS(make_schwarzschild_mode(s, 3), DomainError);
}
