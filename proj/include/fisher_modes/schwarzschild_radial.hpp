#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "fisher_modes/geometry.hpp"
#include "fisher_modes/jet.hpp"
#include "fisher_modes/modes.hpp"

namespace fisher_modes {

// Initial-value problem for the radial equation on a Schwarzschild
// background,
//   (1/r^2) d/dr[r^2 (1 - r_s/r) R'] + (a'^2 + eta'^2/(1 - r_s/r) - l(l+1)/r^2) R = 0,
// posed at r_start with R(r_start) = init_value, R'(r_start) = init_slope.
struct RadialProblem {
  MetricSpec metric = MetricSpec::schwarzschild(0.0);
  double eta_prime = 0.0;
  int ell = 0;
  double alpha_prime_sq = 0.0;
  double r_start = 1.0;
  double r_end = 10.0;
  double init_value = 1.0;
  double init_slope = 0.0;

  // Throws HorizonError for r_start <= r_s, DomainError otherwise.
  void validate() const;

  // Coefficient of R after multiplying the equation by r^2:
  // r^2 a'^2 + eta'^2 r^3/(r - r_s) - l(l+1).
  double potential(double r) const;
};

struct RadialSolution {
  std::vector<double> grid;       // strictly increasing, covers [r_start, r_end]
  std::vector<double> values;     // R
  std::vector<double> slopes;     // R'
  std::vector<double> residuals;  // finite-difference residual per grid point, normalized
  double max_residual = 0.0;
  double rel_tol = 0.0;
  RadialProblem problem;

  // R, R', R'' at any r in [r_start, r_end]: R and the flux r(r - r_s) R'
  // by quintic Hermite interpolation, R'' from the equation.
  Jet evaluate(double r) const;
};

// Adaptive Dormand-Prince integration of (R, P = r^2 (1 - r_s/r) R').
// rel_tol must lie in [1e-12, 1e-4].
RadialSolution solve_radial(const RadialProblem& problem, double rel_tol);

// Sup-norm deviation, relative to the flat solution's sup-norm, between the
// Schwarzschild solution and the r_s = 0 solution with the same data at
// r_start. Requires r_start >= 100 r_s.
double flat_limit_deviation(const RadialProblem& problem, double rel_tol);

// Two-term Frobenius solution about the horizon, d = r - r_s:
//   R = d^s (1 + c_1 d),  s = i eta' r_s,
// returned as the complex value and slope at r. For eta' = 0 this is the
// analytic branch 1 + c_1 d (imaginary parts zero).
struct FrobeniusData {
  std::complex<double> exponent;
  std::complex<double> c1;
  std::complex<double> value;
  std::complex<double> slope;
};
FrobeniusData frobenius_series(const RadialProblem& problem, double r);

struct HorizonStart {
  double r_start;
  double value;
  double slope;
};

// Real standing-wave initial data at r_start = r_s (1 + delta), the real part
// of the Frobenius series. delta must lie in [1e-8, 1e-2].
HorizonStart near_horizon_start(const RadialProblem& problem, double delta);

// r^2 (1 - r_s/r) (R_a R_b' - R_b R_a') at r.
double wronskian(const RadialSolution& a, const RadialSolution& b, double r);

// Separable mode e^{-i eta' tau} R(r) Y_lm built on a numerical radial
// solution; the normalization is computed over [r_start, r_end].
ModeFunction make_schwarzschild_mode(const RadialSolution& solution, int m, int n_theta = 16,
                                     int n_phi = 16);

// CSV with a '#' parameter line, then r,R,dR/dr,residual (10 significant digits).
void write_radial_csv(std::ostream& os, const RadialSolution& solution);

}  // namespace fisher_modes
