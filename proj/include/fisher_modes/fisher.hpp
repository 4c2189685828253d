#pragma once

#include <array>
#include <complex>
#include <span>

#include "fisher_modes/geometry.hpp"
#include "fisher_modes/modes.hpp"
#include "fisher_modes/quadrature.hpp"

namespace fisher_modes {

using Matrix4 = std::array<std::array<double, 4>, 4>;

// Fisher-metric integrals of a normalized mode over a domain, coordinates
// ordered (tau, r, theta, phi).
//
//   entries[mu][nu]    Re integral (d_mu Psi)^* (d_nu Psi) dV
//   imag_parts[mu][nu] the matching imaginary part (antisymmetric)
//   expected[mu][mu]   integral |g_mumu| kappa_mu^2 |Psi|^2 dV; off-diagonal 0
//   metric_diag[mu]    integral |g_mumu| |Psi|^2 dV
//
// The tau derivative is exact: d_tau Psi = -i eta Psi. Residuals are
// |entry - expected| relative to max(|expected|, sqrt(|expected_mumu
// expected_nunu|)), or absolute when that scale is zero. The rr comparison
// only holds for flat metrics; on Schwarzschild it is reported but not
// checked (see `checked`), constraint_check covers it there.
struct FisherReport {
  ModeSpec mode;
  MetricSpec metric = MetricSpec::minkowski();
  Domain domain;
  Matrix4 entries{};
  Matrix4 expected{};
  Matrix4 residuals{};
  Matrix4 imag_parts{};
  std::array<std::array<bool, 4>, 4> checked{};
  std::array<double, 4> metric_diag{};
  double norm = 0.0;
  double tol = 0.0;
  double offdiag_tol = 0.0;
  bool pass = false;
};

// Throws NormalizationError unless integral |Psi|^2 = 1 +- 1e-6 on `dom`, and
// ConvergenceError when the estimate moves by more than 1e-7 (relative) under
// doubling of every node count. The refined estimate is reported. Diagonal
// entries pass at `tol`, off-diagonal real parts at `offdiag_tol` absolute.
FisherReport fisher_matrix(const ModeFunction& mode, const Domain& dom, double tol = 1e-6,
                           double offdiag_tol = 1e-8);

// integral (d_mu Psi)^* (d_nu Psi) dV on dom, no normalization check.
std::complex<double> hermitian_entry(const ModeFunction& mode, const Domain& dom, Coord mu,
                                     Coord nu);

// Per-coordinate constraint integral |nabla_mu Psi|^2 = integral kappa_mu^2 |Psi|^2
// (nabla_mu = w_mu d_mu, see gradient_weights). The radial integration by
// parts leaves the surface term [r^2 x Re(Psi^* d_r Psi)] over the sphere,
// reported in `boundary` and added to the right side; it vanishes for modes
// that are zero on the boundary. residual = |lhs - rhs - boundary| / max(|lhs|,
// |rhs + boundary|).
struct ConstraintResult {
  std::array<double, 4> lhs{};
  std::array<double, 4> rhs{};
  std::array<double, 4> boundary{};
  std::array<double, 4> residual{};
  std::array<bool, 4> pass{};
  double tol = 0.0;
  bool all_pass = false;
};

// `metric` must be the mode's own metric (ShapeError otherwise).
ConstraintResult constraint_check(const ModeFunction& mode, const MetricSpec& metric,
                                  const Domain& dom, double tol = 1e-6);

// Geodesic distance 2 arccos(sum sqrt(a_j b_j)) between two discrete
// distributions, evaluated as 4 atan2(|sqrt a - sqrt b|, |sqrt a + sqrt b|),
// which is the same angle but exact at a = b and well conditioned near it.
// Cells must be strictly positive and each distribution must sum to 1 +- 1e-12.
double statistical_distance(std::span<const double> rho_a, std::span<const double> rho_b);

}  // namespace fisher_modes
