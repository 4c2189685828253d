#include "fisher_modes/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/kernels.hpp"

namespace fisher_modes {
namespace {

constexpr double kNormTol = 1e-6;
constexpr double kRefineTol = 1e-7;

// Integrates k components on dom and on dom.refined(); returns the refined
// values after checking that they agree.
std::vector<double> refined_sweep(const MetricSpec& metric, const Domain& dom, std::size_t k,
                                  const VectorField& f, const char* what) {
  const std::vector<double> coarse = integrate_many(metric, dom, k, f);
  const std::vector<double> fine = integrate_many(metric, dom.refined(), k, f);
  double size = 0.0;
  for (double v : fine) size = std::max(size, std::abs(v));
  for (std::size_t c = 0; c < k; ++c) {
    const double scale = std::max(std::abs(fine[c]), 1e-6 * size);
    if (std::abs(fine[c] - coarse[c]) > kRefineTol * scale) {
      throw ConvergenceError(std::string(what) + ": quadrature not converged on the domain (component " +
                                 std::to_string(c) + ")",
                             coarse[c], fine[c]);
    }
  }
  return fine;
}

void require_normalized(double norm) {
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw NormalizationError("mode is not normalized on the domain: integral |Psi|^2 = " +
                             std::to_string(norm));
  }
}

double relative_gap(double value, double reference, double scale) {
  const double gap = std::abs(value - reference);
  return scale > 0.0 ? gap / scale : gap;
}

}  // namespace

FisherReport fisher_matrix(const ModeFunction& mode, const Domain& dom, double tol,
                           double offdiag_tol) {
  const MetricSpec& metric = mode.metric();
  dom.validate(metric);
  if (!(tol > 0.0) || !(offdiag_tol > 0.0)) throw DomainError("fisher_matrix: tolerances must be > 0");

  // Layout: 10 real parts (upper triangle incl. diagonal), 6 imaginary parts
  // (strict upper triangle), |Psi|^2, 4 expected, 4 metric weights.
  constexpr std::size_t kPairs = 10;
  constexpr std::size_t kImag = 6;
  constexpr std::size_t kNorm = kPairs + kImag;
  constexpr std::size_t kExpected = kNorm + 1;
  constexpr std::size_t kMetric = kExpected + 4;
  constexpr std::size_t kCount = kMetric + 4;

  const VectorField f = [&mode, &metric](const CoordPoint& p, std::span<double> out) {
    const ModeDerivatives d = mode.derivatives(p);
    const auto kappa = mode.multipliers(p);
    const auto g = metric_diag(metric, p);
    std::size_t pair = 0;
    std::size_t imag = 0;
    for (int mu = 0; mu < 4; ++mu) {
      for (int nu = mu; nu < 4; ++nu) {
        const std::complex<double> h = std::conj(d.first[mu]) * d.first[nu];
        out[pair++] = h.real();
        if (nu != mu) out[kPairs + imag++] = h.imag();
      }
    }
    const double density = std::norm(d.value);
    out[kNorm] = density;
    for (int mu = 0; mu < 4; ++mu) {
      out[kExpected + mu] = std::abs(g[mu]) * kappa[mu] * density;
      out[kMetric + mu] = std::abs(g[mu]) * density;
    }
  };
  const std::vector<double> v = refined_sweep(metric, dom, kCount, f, "fisher_matrix");
  require_normalized(v[kNorm]);

  FisherReport rep;
  rep.mode = mode.spec();
  rep.metric = metric;
  rep.domain = dom;
  rep.norm = v[kNorm];
  rep.tol = tol;
  rep.offdiag_tol = offdiag_tol;
  std::size_t pair = 0;
  std::size_t imag = 0;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = mu; nu < 4; ++nu) {
      rep.entries[mu][nu] = rep.entries[nu][mu] = v[pair++];
      if (nu != mu) {
        rep.imag_parts[mu][nu] = v[kPairs + imag];
        rep.imag_parts[nu][mu] = -v[kPairs + imag];
        ++imag;
      }
    }
    rep.expected[mu][mu] = v[kExpected + mu];
    rep.metric_diag[mu] = v[kMetric + mu];
  }

  const bool flat = metric.r_s() == 0.0;
  rep.pass = true;
  for (int mu = 0; mu < 4; ++mu) {
    for (int nu = 0; nu < 4; ++nu) {
      const double scale =
          std::max(std::abs(rep.expected[mu][nu]),
                   std::sqrt(std::abs(rep.expected[mu][mu] * rep.expected[nu][nu])));
      rep.residuals[mu][nu] =
          mu == nu ? relative_gap(rep.entries[mu][nu], rep.expected[mu][nu], scale)
                   : std::abs(rep.entries[mu][nu]);
      rep.checked[mu][nu] = flat || !(mu == kR && nu == kR);
      if (!rep.checked[mu][nu]) continue;
      const double limit = mu == nu ? tol : offdiag_tol;
      if (!(rep.residuals[mu][nu] <= limit)) rep.pass = false;
    }
  }
  return rep;
}

std::complex<double> hermitian_entry(const ModeFunction& mode, const Domain& dom, Coord mu,
                                     Coord nu) {
  const auto v = integrate_many(mode.metric(), dom, 2, [&](const CoordPoint& p, std::span<double> out) {
    const ModeDerivatives d = mode.derivatives(p);
    const std::complex<double> h = std::conj(d.first[mu]) * d.first[nu];
    out[0] = h.real();
    out[1] = h.imag();
  });
  return {v[0], v[1]};
}

namespace {

// Surface term [r^2 x Re(Psi^* d_r Psi)] integrated over the sphere at radius r.
double radial_flux(const ModeFunction& mode, const Domain& dom, double r) {
  if (r == 0.0) return 0.0;
  const double x = mode.metric().lapse_sq(r);
  const GaussRule polar = gauss_legendre(dom.n_theta, -1.0, 1.0);
  const double dphi = 2.0 * std::numbers::pi / dom.n_phi;
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(std::size_t(dom.n_theta) * dom.n_phi);
  weights.reserve(values.capacity());
  for (int j = 0; j < dom.n_theta; ++j) {
    const double theta = std::acos(polar.nodes[j]);
    for (int k = 0; k < dom.n_phi; ++k) {
      const CoordPoint p{0.0, r, theta, (k + 0.5) * dphi};
      const ModeDerivatives d = mode.derivatives(p);
      values.push_back((std::conj(d.value) * d.first[kR]).real());
      weights.push_back(polar.weights[j] * dphi);
    }
  }
  return r * r * x * kernels::dot(values, weights);
}

}  // namespace

ConstraintResult constraint_check(const ModeFunction& mode, const MetricSpec& metric,
                                  const Domain& dom, double tol) {
  if (!(metric == mode.metric())) {
    throw ShapeError("constraint_check: metric differs from the mode's metric");
  }
  dom.validate(metric);
  if (!(tol > 0.0)) throw DomainError("constraint_check: tolerance must be > 0");

  const VectorField f = [&mode, &metric](const CoordPoint& p, std::span<double> out) {
    const ModeDerivatives d = mode.derivatives(p);
    const auto kappa = mode.multipliers(p);
    const auto w = gradient_weights(metric, p);
    const double density = std::norm(d.value);
    for (int mu = 0; mu < 4; ++mu) {
      out[mu] = w[mu] * w[mu] * std::norm(d.first[mu]);
      out[4 + mu] = kappa[mu] * density;
    }
    out[8] = density;
  };
  const std::vector<double> v = refined_sweep(metric, dom, 9, f, "constraint_check");
  require_normalized(v[8]);

  ConstraintResult res;
  res.tol = tol;
  res.all_pass = true;
  for (int mu = 0; mu < 4; ++mu) {
    res.lhs[mu] = v[mu];
    res.rhs[mu] = v[4 + mu];
  }
  res.boundary[kR] = radial_flux(mode, dom.refined(), dom.r_max) -
                     radial_flux(mode, dom.refined(), dom.r_min);
  for (int mu = 0; mu < 4; ++mu) {
    const double right = res.rhs[mu] + res.boundary[mu];
    const double scale = std::max(std::abs(res.lhs[mu]), std::abs(right));
    res.residual[mu] = scale > 0.0 ? std::abs(res.lhs[mu] - right) / scale : 0.0;
    res.pass[mu] = res.residual[mu] <= tol;
    res.all_pass = res.all_pass && res.pass[mu];
  }
  return res;
}

double statistical_distance(std::span<const double> rho_a, std::span<const double> rho_b) {
  if (rho_a.size() != rho_b.size()) {
    throw ShapeError("statistical_distance: supports differ in size (" +
                     std::to_string(rho_a.size()) + " vs " + std::to_string(rho_b.size()) + ")");
  }
  if (rho_a.empty()) throw ShapeError("statistical_distance: empty distribution");
  for (const auto rho : {rho_a, rho_b}) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
      if (!(rho[j] > 0.0) || !std::isfinite(rho[j])) {
        throw DomainError("statistical_distance: cell " + std::to_string(j) +
                          " must be strictly positive");
      }
    }
    const std::vector<double> ones(rho.size(), 1.0);
    const double total = kernels::dot(rho, ones);
    if (!(std::abs(total - 1.0) <= 1e-12)) {
      throw DomainError("statistical_distance: distribution sums to " + std::to_string(total));
    }
  }
  const kernels::ChordSums s = kernels::root_chord_sums(rho_a, rho_b);
  return 4.0 * std::atan2(std::sqrt(s.minus_sq), std::sqrt(s.plus_sq));
}

}  // namespace fisher_modes
