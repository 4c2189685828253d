#include "fisher_modes/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fisher_modes/errors.hpp"

namespace fisher_modes {

std::string_view family_name(ModeFamily family) {
  switch (family) {
    case ModeFamily::Free: return "free";
    case ModeFamily::Localized: return "localized";
    case ModeFamily::Hydrogen: return "hydrogen";
    case ModeFamily::SchwarzschildNumeric: return "schwarzschild";
  }
  return "unknown";
}

ModeFamily parse_family(std::string_view name) {
  if (name == "free") return ModeFamily::Free;
  if (name == "localized") return ModeFamily::Localized;
  if (name == "hydrogen") return ModeFamily::Hydrogen;
  if (name == "schwarzschild") return ModeFamily::SchwarzschildNumeric;
  throw DomainError("unknown mode family '" + std::string(name) + "'");
}

ModeFunction::ModeFunction(ModeSpec spec, MetricSpec metric, Domain support, RadialProfile radial,
                           RadialField alpha_sq_field)
    : spec_(spec),
      metric_(metric),
      support_(support),
      radial_(std::move(radial)),
      alpha_sq_field_(std::move(alpha_sq_field)) {}

Jet ModeFunction::radial(double r) const {
  if (metric_.kind() == MetricKind::Schwarzschild) metric_.lapse_sq(r);
  return radial_(r) * Jet(spec_.norm);
}

std::complex<double> ModeFunction::operator()(const CoordPoint& p) const {
  const double rad = radial(p.r).v;
  const double polar = polar_factor(spec_.idx, p.theta);
  return std::polar(1.0, spec_.idx.m() * p.phi - spec_.eta * p.tau) * (rad * polar);
}

ModeDerivatives ModeFunction::derivatives(const CoordPoint& p) const {
  const Jet rad = radial(p.r);
  const Jet polar = polar_factor(spec_.idx, Jet::variable(p.theta));
  const std::complex<double> phase = std::polar(1.0, spec_.idx.m() * p.phi - spec_.eta * p.tau);
  const std::complex<double> i{0.0, 1.0};
  const double m = spec_.idx.m();
  const double eta = spec_.eta;

  ModeDerivatives d;
  d.value = phase * (rad.v * polar.v);
  d.first = {-i * eta * d.value, phase * (rad.d1 * polar.v), phase * (rad.v * polar.d1),
             i * m * d.value};
  d.second = {-eta * eta * d.value, phase * (rad.d2 * polar.v), phase * (rad.v * polar.d2),
              -m * m * d.value};
  return d;
}

namespace {

struct PointFactors {
  double x;      // 1 - r_s/r
  double sin_t;
};

PointFactors interior_factors(const MetricSpec& metric, const CoordPoint& p) {
  if (!(p.r > 0.0)) throw SingularPointError("r=0 is a coordinate singularity");
  const double s = std::sin(p.theta);
  if (!(p.theta > 0.0 && p.theta < std::numbers::pi) || s == 0.0) {
    throw SingularPointError("theta=" + std::to_string(p.theta) + " is a coordinate singularity");
  }
  return {metric.lapse_sq(p.r), s};
}

}  // namespace

std::array<double, 4> ModeFunction::multipliers(const CoordPoint& p) const {
  const auto [x, s] = interior_factors(metric_, p);
  const double r2 = p.r * p.r;
  const double ell = spec_.idx.ell_term();
  const double m2 = double(spec_.idx.m()) * spec_.idx.m();
  const double eta2 = spec_.eta * spec_.eta;
  return {eta2 / x, alpha_sq_field_(p.r) + eta2 / x - ell / r2, (ell - m2 / (s * s)) / r2,
          m2 / (r2 * s * s)};
}

ModeFunction ModeFunction::scaled(double factor) const {
  ModeFunction copy = *this;
  copy.spec_.norm *= factor;
  return copy;
}

ModeFunction make_free_mode(const ModeSpec& in, const Domain& box, SpectralClosure closure) {
  if (in.beta != 0.0) throw DomainError("free mode requires beta = 0");
  if (box.r_min != 0.0) throw DomainError("free-mode box must start at the origin (r_min = 0)");
  box.validate(MetricSpec::minkowski());
  if (in.n_radial < 1) {
    throw DomainError("free mode: n_radial counts Dirichlet zeros and must be >= 1");
  }
  if (!std::isfinite(in.eta) || !std::isfinite(in.alpha_sq)) {
    throw DomainError("free mode: non-finite eta or alpha^2");
  }

  const int ell = in.idx.ell();
  const double k = spherical_bessel_zero(ell, in.n_radial) / box.r_max;
  ModeSpec spec = in;
  spec.family = ModeFamily::Free;
  if (closure == SpectralClosure::ResolveAlpha) {
    if (!(in.alpha_sq + in.eta * in.eta > 0.0)) {
      throw EvanescentModeError("free mode: alpha^2 + eta^2 = " +
                                std::to_string(in.alpha_sq + in.eta * in.eta) +
                                " <= 0 has no oscillatory radial solution");
    }
    spec.alpha_sq = k * k - in.eta * in.eta;
  } else {
    const double eta_sq = k * k - in.alpha_sq;
    if (!(eta_sq >= 0.0)) {
      throw EvanescentModeError("free mode: alpha^2 exceeds the box wavenumber squared k^2 = " +
                                std::to_string(k * k) + "; no real frequency");
    }
    spec.eta = std::copysign(std::sqrt(eta_sq), in.eta);
  }

  RadialProfile profile = [k, ell](double r) { return spherical_bessel_j(ell, Jet(k * r, k, 0.0)); };
  const int nodes = std::max(box.n_r, 64 + 8 * (in.n_radial + ell));
  const double norm_sq = integrate_interval(0.0, box.r_max, nodes, [&](double r) {
    const double v = profile(r).v;
    return v * v * r * r;
  });
  spec.norm = 1.0 / std::sqrt(norm_sq);

  const double alpha_sq = spec.alpha_sq;
  return ModeFunction(spec, MetricSpec::minkowski(), box, std::move(profile),
                      [alpha_sq](double) { return alpha_sq; });
}

double localized_alpha_sq(int n_radial, int ell, double beta, double eta) {
  return beta * (4.0 * n_radial + 2.0 * ell + 3.0) - eta * eta;
}

int localized_quantum_number(double alpha_sq, double eta, int ell, double beta) {
  if (!(beta > 0.0)) throw DomainError("localized mode requires beta > 0");
  const double degree = ((alpha_sq + eta * eta) / beta - 2.0 * ell - 3.0) / 4.0;
  const double nearest = std::round(degree);
  if (!std::isfinite(degree) || nearest < 0.0 ||
      std::abs(degree - nearest) > 1e-9 * std::max(1.0, std::abs(degree))) {
    throw UnsupportedIndexError("localized mode: alpha^2 implies Laguerre degree " +
                                std::to_string(degree) +
                                ", which is not a nonnegative integer (no polynomial solution)");
  }
  return static_cast<int>(nearest);
}

namespace {

RadialProfile localized_profile(int n, int ell, double beta) {
  return [n, ell, beta](double r) {
    const Jet rj = Jet::variable(r);
    const Jet x = rj * rj * Jet(beta);
    return ipow(rj, ell) * exp(x * Jet(-0.5)) * laguerre_recurrence(n, ell + 0.5, x);
  };
}

}  // namespace

ModeFunction make_localized_mode(const ModeSpec& in, std::optional<LocalizationConstraint> constraint,
                                 std::optional<Domain> support) {
  if (in.n_radial < 0) throw UnsupportedIndexError("localized mode: Laguerre degree must be >= 0");
  const int ell = in.idx.ell();
  ModeSpec spec = in;
  spec.family = ModeFamily::Localized;

  if (constraint) {
    if (!(constraint->sigma_r > 0.0) || !std::isfinite(constraint->sigma_r)) {
      throw DomainError("localization constraint: sigma_r must be positive");
    }
    // <r^2> depends on beta only through beta r^2, so one unit-beta moment
    // fixes beta.
    const RadialProfile unit = localized_profile(in.n_radial, ell, 1.0);
    const double cut = 10.0 + 2.0 * std::sqrt(4.0 * in.n_radial + 2.0 * ell + 3.0);
    const auto moment = [&](int power) {
      return integrate_interval(0.0, cut, 256, [&](double r) {
        const double v = unit(r).v;
        return v * v * std::pow(r, power);
      });
    };
    spec.beta = moment(4) / moment(2) / (constraint->sigma_r * constraint->sigma_r);
  }
  if (!(spec.beta > 0.0) || !std::isfinite(spec.beta)) {
    throw DomainError("localized mode requires beta > 0");
  }
  spec.alpha_sq = localized_alpha_sq(in.n_radial, ell, spec.beta, in.eta);

  Domain dom;
  if (support) {
    dom = *support;
  } else {
    dom.r_min = 0.0;
    dom.r_max = std::max(10.0 / std::sqrt(spec.beta), constraint ? 8.0 * constraint->sigma_r : 0.0);
    dom.n_r = 96;
  }
  dom.validate(MetricSpec::minkowski());

  RadialProfile profile = localized_profile(in.n_radial, ell, spec.beta);
  const double norm_sq = integrate_interval(0.0, dom.r_max, 256, [&](double r) {
    const double v = profile(r).v;
    return v * v * r * r;
  });
  spec.norm = 1.0 / std::sqrt(norm_sq);

  const double alpha_sq = spec.alpha_sq;
  const double beta = spec.beta;
  return ModeFunction(spec, MetricSpec::minkowski(), dom, std::move(profile),
                      [alpha_sq, beta](double r) { return alpha_sq - beta * beta * r * r; });
}

ModeFunction rebuild_mode(const ModeSpec& spec, const Domain& support) {
  switch (spec.family) {
    case ModeFamily::Free: return make_free_mode(spec, support, SpectralClosure::ResolveAlpha);
    case ModeFamily::Localized: return make_localized_mode(spec, std::nullopt, support);
    default:
      throw DomainError("rebuild_mode: family '" + std::string(family_name(spec.family)) +
                        "' is not reconstructible from a spec alone");
  }
}

double radial_second_moment(const ModeFunction& mode) {
  const auto sums = integrate_many(mode.metric(), mode.support(), 2,
                                   [&](const CoordPoint& p, std::span<double> out) {
                                     const double density = std::norm(mode(p));
                                     out[0] = density * p.r * p.r;
                                     out[1] = density;
                                   });
  return sums[0] / sums[1];
}

double pde_residual(const ModeFunction& mode, const CoordPoint& p) {
  const auto [x, s] = interior_factors(mode.metric(), p);
  const ModeDerivatives d = mode.derivatives(p);
  const double r = p.r;
  const double r2 = r * r;
  const double r_s = mode.metric().r_s();

  const std::complex<double> t_tau = d.second[kTau] / x;
  const std::complex<double> t_rad =
      x * (d.second[kR] + 2.0 * d.first[kR] / r) + (r_s / r2) * d.first[kR];
  const std::complex<double> t_ang =
      (d.second[kTheta] + (std::cos(p.theta) / s) * d.first[kTheta]) / r2 +
      d.second[kPhi] / (r2 * s * s);
  const std::complex<double> t_pot = mode.alpha_sq_field(r) * d.value;

  const double scale =
      std::max({std::abs(t_tau), std::abs(t_rad), std::abs(t_ang), std::abs(t_pot)});
  if (scale == 0.0) return 0.0;
  return std::abs(t_tau - t_rad - t_ang - t_pot) / scale;
}

double kg_alpha_sq(double mu, double hbar, double c) {
  if (!(mu >= 0.0) || !std::isfinite(mu)) throw DomainError("kg_alpha_sq: mass must be >= 0");
  if (!(hbar > 0.0) || !(c > 0.0)) throw DomainError("kg_alpha_sq: hbar and c must be positive");
  return -(mu * c / hbar) * (mu * c / hbar);
}

std::array<double, 3> multiplier_fields(const ModeSpec& spec, const CoordPoint& p) {
  const auto [x, s] = interior_factors(MetricSpec::minkowski(), p);
  (void)x;
  const double r2 = p.r * p.r;
  const double ell = spec.idx.ell_term();
  const double m2 = double(spec.idx.m()) * spec.idx.m();
  return {spec.alpha_sq + spec.eta * spec.eta - spec.beta * spec.beta * r2 - ell / r2,
          (ell - m2 / (s * s)) / r2, m2 / (r2 * s * s)};
}

}  // namespace fisher_modes
