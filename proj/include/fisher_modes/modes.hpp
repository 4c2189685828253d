#pragma once

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string_view>

#include "fisher_modes/geometry.hpp"
#include "fisher_modes/jet.hpp"
#include "fisher_modes/quadrature.hpp"
#include "fisher_modes/specfun.hpp"

namespace fisher_modes {

enum class ModeFamily { Free, Localized, Hydrogen, SchwarzschildNumeric };

std::string_view family_name(ModeFamily family);
ModeFamily parse_family(std::string_view name);

// Quantum numbers and multipliers selecting one separable solution
//   Psi = e^{-i eta tau} * norm * R(r) * Theta(theta) * e^{i m phi}.
struct ModeSpec {
  ModeFamily family = ModeFamily::Free;
  double eta = 0.0;            // temporal frequency
  AngularIndex idx{0, 0};
  double alpha_sq = 0.0;       // multiplier sum alpha^2
  double beta = 0.0;           // localization multiplier; 0 for free modes
  int n_radial = 1;            // Dirichlet zero index (free, >= 1) or Laguerre degree (localized, >= 0)
  double norm = 1.0;
};

// <r^2> = sigma_r^2 about the origin.
struct LocalizationConstraint {
  double sigma_r = 1.0;
};

// Which multiplier absorbs the box quantization k = z_{l,n} / R_box of a
// free mode: alpha^2 := k^2 - eta^2, or eta := sqrt(k^2 - alpha^2) (keeping
// the sign of the requested eta).
enum class SpectralClosure { ResolveAlpha, ResolveEta };

// Value and the diagonal first and second partials in (tau, r, theta, phi).
struct ModeDerivatives {
  std::complex<double> value;
  std::array<std::complex<double>, 4> first;
  std::array<std::complex<double>, 4> second;
};

using RadialProfile = std::function<Jet(double r)>;
using RadialField = std::function<double(double r)>;

// Immutable evaluable separable wave function. `radial` returns the
// unnormalized R(r) with its first two derivatives; `alpha_sq_field` is the
// (possibly r-dependent) multiplier sum E(r) entering
//   (1/x) d_tau^2 Psi - (1/r^2) d_r(r^2 x d_r Psi) - Lap_S2 Psi / r^2 = E(r) Psi,
// x = 1 - r_s/r. Free: E = alpha^2; localized: E = alpha^2 - beta^2 r^2.
class ModeFunction {
 public:
  ModeFunction(ModeSpec spec, MetricSpec metric, Domain support, RadialProfile radial,
               RadialField alpha_sq_field);

  const ModeSpec& spec() const noexcept { return spec_; }
  const MetricSpec& metric() const noexcept { return metric_; }
  const Domain& support() const noexcept { return support_; }

  std::complex<double> operator()(const CoordPoint& p) const;
  ModeDerivatives derivatives(const CoordPoint& p) const;

  // norm * R(r) with derivatives.
  Jet radial(double r) const;
  double alpha_sq_field(double r) const { return alpha_sq_field_(r); }

  // Multiplier fields (kappa_0^2, ..., kappa_3^2) normalized so that
  // integral |nabla_mu Psi|^2 = integral kappa_mu^2 |Psi|^2 for modes that
  // vanish on the domain boundary.
  std::array<double, 4> multipliers(const CoordPoint& p) const;

  // Copy with the overall amplitude multiplied by `factor`.
  ModeFunction scaled(double factor) const;

 private:
  ModeSpec spec_;
  MetricSpec metric_;
  Domain support_;
  RadialProfile radial_;
  RadialField alpha_sq_field_;
};

// Free mode R = A j_l(k r) in the Dirichlet box [0, box.r_max]:
// k = z_{l, n_radial} / R_box. Requires beta = 0.
ModeFunction make_free_mode(const ModeSpec& spec, const Domain& box,
                            SpectralClosure closure = SpectralClosure::ResolveAlpha);

// alpha^2 fixed by polynomial termination: alpha^2 + eta^2 = beta (4n + 2l + 3).
double localized_alpha_sq(int n_radial, int ell, double beta, double eta);

// Inverse of localized_alpha_sq. Throws UnsupportedIndexError unless the
// implied Laguerre degree is a nonnegative integer.
int localized_quantum_number(double alpha_sq, double eta, int ell, double beta);

// Harmonically localized mode R = B r^l e^{-beta r^2/2} L_n^{l+1/2}(beta r^2).
// With a constraint, beta is recalibrated so that <r^2> = sigma_r^2. The
// support is [0, max(10/sqrt(beta), 8 sigma_r)] unless given.
ModeFunction make_localized_mode(const ModeSpec& spec,
                                 std::optional<LocalizationConstraint> constraint = std::nullopt,
                                 std::optional<Domain> support = std::nullopt);

// Rebuilds a free or localized mode from a serialized spec and domain.
ModeFunction rebuild_mode(const ModeSpec& spec, const Domain& support);

// <r^2> of a mode over its support, by quadrature.
double radial_second_moment(const ModeFunction& mode);

// |(1/x) d_tau^2 Psi - radial - angular - E(r) Psi| divided by the largest
// of those four term magnitudes.
double pde_residual(const ModeFunction& mode, const CoordPoint& p);

// alpha^2 = -mu^2 c^2 / hbar^2.
double kg_alpha_sq(double mu, double hbar = 1.0, double c = 1.0);

// (kappa_1^2, kappa_2^2, kappa_3^2) for a Minkowski mode at p:
//   kappa_1^2 = alpha^2 + eta^2 - beta^2 r^2 - l(l+1)/r^2
//   kappa_2^2 = (l(l+1) - m^2/sin^2 theta) / r^2
//   kappa_3^2 = m^2 / (r^2 sin^2 theta)
std::array<double, 3> multiplier_fields(const ModeSpec& spec, const CoordPoint& p);

}  // namespace fisher_modes
