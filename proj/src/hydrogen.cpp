#include "fisher_modes/hydrogen.hpp"

#include <cmath>
#include <string>

#include "fisher_modes/errors.hpp"

namespace fisher_modes {

void HydrogenState::validate() const {
  if (n < 1) throw DomainError("hydrogen state: n must be >= 1, got " + std::to_string(n));
  if (idx.ell() > n - 1) {
    throw DomainError("hydrogen state: l <= n - 1 violated (n=" + std::to_string(n) +
                      ", l=" + std::to_string(idx.ell()) + ")");
  }
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("hydrogen state: a must be positive");
}

namespace {

double radial_norm(const HydrogenState& s) {
  const int l = s.idx.ell();
  // (n-l-1)!/(n+l)! as a running product
  double ratio = 1.0;
  for (int k = s.n - l; k <= s.n + l; ++k) ratio /= k;
  const double c = 2.0 / (s.n * s.a);
  return std::sqrt(c * c * c * ratio / (2.0 * s.n));
}

}  // namespace

Jet hydrogen_radial(const HydrogenState& state, double r) {
  const double scale = 2.0 / (state.n * state.a);
  const Jet rho{scale * r, scale, 0.0};
  const int l = state.idx.ell();
  const Jet lag = laguerre_recurrence(state.n - l - 1, 2.0 * l + 1.0, rho);
  return Jet(radial_norm(state)) * exp(rho * Jet(-0.5)) * ipow(rho, l) * lag;
}

std::complex<double> hydrogen_psi(const HydrogenState& state, const CoordPoint& p) {
  state.validate();
  if (!(p.r >= 0.0)) throw DomainError("hydrogen_psi: r must be >= 0");
  return hydrogen_radial(state, p.r).v * spherical_harmonic(state.idx, p.theta, p.phi);
}

Domain hydrogen_domain(const HydrogenState& state) {
  state.validate();
  Domain dom;
  dom.r_min = 0.0;
  dom.r_max = 60.0 * state.a * state.n;
  dom.n_r = 96 + 32 * state.n;
  dom.n_theta = std::max(16, 2 * state.idx.ell() + 8);
  dom.n_phi = std::max(16, 4 * state.idx.abs_m() + 8);
  return dom;
}

ModeFunction make_hydrogen_mode(const HydrogenState& state, std::optional<Domain> support) {
  state.validate();
  const Domain dom = support ? *support : hydrogen_domain(state);
  dom.validate(MetricSpec::minkowski());
  ModeSpec spec;
  spec.family = ModeFamily::Hydrogen;
  spec.eta = 0.0;
  spec.idx = state.idx;
  spec.n_radial = state.n;
  spec.alpha_sq = -1.0 / (state.n * state.n * state.a * state.a);
  spec.norm = 1.0;
  const double a = state.a;
  const double bound = spec.alpha_sq;
  return ModeFunction(spec, MetricSpec::minkowski(), dom,
                      [state](double r) { return hydrogen_radial(state, r); },
                      [a, bound](double r) { return 2.0 / (a * r) + bound; });
}

AppendixCheck appendix_fisher_check(const HydrogenState& state, const Domain& dom, double tol) {
  const ModeFunction mode = make_hydrogen_mode(state, dom);
  const FisherReport rep = fisher_matrix(mode, dom, tol);

  AppendixCheck out;
  out.state = state;
  out.domain = dom;
  out.tol = tol;
  out.pass = true;
  for (int i = 0; i < 3; ++i) {
    const int mu = i + 1;
    out.integrals[i] = rep.entries[mu][mu];
    out.right_sides[i] = rep.expected[mu][mu];
    const double scale = std::max(std::abs(out.integrals[i]), std::abs(out.right_sides[i]));
    out.side_residuals[i] =
        scale > 0.0 ? std::abs(out.integrals[i] - out.right_sides[i]) / scale : 0.0;
    out.pass = out.pass && out.side_residuals[i] <= tol;
  }
  if (state.n == 3 && state.idx.ell() == 2 && state.idx.m() == 2) {
    const std::array<double, 3> ref{1.0 / (45.0 * state.a * state.a), 1.0, 4.0};
    out.reference = ref;
    bool agree = true;
    for (int i = 0; i < 3; ++i) {
      out.reference_residuals[i] = std::abs(out.integrals[i] - ref[i]) / ref[i];
      agree = agree && out.reference_residuals[i] <= tol;
    }
    out.quarter_factor_absorbed = agree;
    out.pass = out.pass && agree;
  }
  return out;
}

}  // namespace fisher_modes
