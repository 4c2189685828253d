#include "fisher_modes/schwarzschild_radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <string>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/ode.hpp"

namespace fisher_modes {

void RadialProblem::validate() const {
  if (!std::isfinite(eta_prime) || !std::isfinite(alpha_prime_sq) || !std::isfinite(init_value) ||
      !std::isfinite(init_slope) || !std::isfinite(r_start) || !std::isfinite(r_end)) {
    throw DomainError("radial problem: non-finite parameter");
  }
  if (ell < 0) throw DomainError("radial problem: ell must be >= 0");
  if (!(r_start > metric.r_s())) {
    throw HorizonError("radial problem: r_start=" + std::to_string(r_start) +
                       " must lie outside the horizon r_s=" + std::to_string(metric.r_s()));
  }
  if (!(r_start < r_end)) throw DomainError("radial problem: r_start < r_end violated");
}

double RadialProblem::potential(double r) const {
  const double d = r - metric.r_s();
  return r * r * alpha_prime_sq + eta_prime * eta_prime * r * r * r / d -
         double(ell) * double(ell + 1);
}

namespace {

// Fornberg's weights for the first derivative at z from nodes x[0..n).
template <std::size_t N>
std::array<double, N> first_derivative_weights(double z, const std::array<double, N>& x) {
  std::array<std::array<double, 2>, N> c{};
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < N; ++i) {
    const std::size_t mn = std::min<std::size_t>(i, 1);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (std::size_t k = mn; k >= 1; --k) {
          c[i][k] = c1 * (double(k) * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        }
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (std::size_t k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - double(k) * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::array<double, N> w{};
  for (std::size_t i = 0; i < N; ++i) w[i] = c[i][1];
  return w;
}

ode::Trajectory run(const RadialProblem& prob, double rel_tol) {
  const double r_s = prob.metric.r_s();
  const ode::Rhs rhs = [&prob, r_s](double r, const ode::State& y) -> ode::State {
    const double d = r - r_s;
    return {y[1] / (r * d), -prob.potential(r) * y[0]};
  };
  const double gap = r_s > 0.0 ? prob.r_start - r_s : prob.r_start;
  ode::Options opt;
  opt.rel_tol = rel_tol;
  opt.initial_step = 1e-2 * std::min(gap, prob.r_end - prob.r_start);
  const double d0 = prob.r_start - r_s;
  const ode::State y0{prob.init_value, prob.r_start * d0 * prob.init_slope};
  try {
    return ode::integrate_dopri5(rhs, prob.r_start, y0, prob.r_end, opt);
  } catch (const ode::StepUnderflow& e) {
    if (r_s > 0.0 && e.t - r_s <= 1e-2 * r_s) {
      throw NearHorizonError("step size underflow at r=" + std::to_string(e.t) +
                                 " close to the horizon; choose a larger r_start",
                             e.t);
    }
    throw BlowUpError("step size underflow at r=" + std::to_string(e.t), e.t);
  } catch (const ode::NonFiniteState& e) {
    throw BlowUpError("solution became non-finite after r=" + std::to_string(e.t), e.t);
  }
}

}  // namespace

RadialSolution solve_radial(const RadialProblem& prob, double rel_tol) {
  prob.validate();
  if (!(rel_tol >= 1e-12 && rel_tol <= 1e-4)) {
    throw DomainError("solve_radial: rel_tol must lie in [1e-12, 1e-4]");
  }
  const ode::Trajectory traj = run(prob, rel_tol);
  const double r_s = prob.metric.r_s();

  constexpr std::size_t kMinPoints = 200;
  const std::size_t steps = traj.steps.size();
  const std::size_t sub = std::max<std::size_t>(4, (kMinPoints + steps - 1) / steps);

  RadialSolution sol;
  sol.problem = prob;
  sol.rel_tol = rel_tol;
  std::vector<double> flux;
  const std::size_t total = steps * sub + 1;
  sol.grid.reserve(total);
  sol.values.reserve(total);
  flux.reserve(total);
  for (const ode::Step& st : traj.steps) {
    for (std::size_t j = 0; j < sub; ++j) {
      const double r = st.t0 + st.h * double(j) / double(sub);
      const ode::State y = j == 0 ? st.dense[0] : st.at(r);
      sol.grid.push_back(r);
      sol.values.push_back(y[0]);
      flux.push_back(y[1]);
    }
  }
  {
    const ode::Step& st = traj.steps.back();
    sol.grid.push_back(prob.r_end);
    sol.values.push_back(st.dense[0][0] + st.dense[1][0]);
    flux.push_back(st.dense[0][1] + st.dense[1][1]);
  }
  const std::size_t n = sol.grid.size();
  sol.slopes.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = sol.grid[i];
    sol.slopes[i] = flux[i] / (r * (r - r_s));
  }

  // Residual of P' + V(r) R = 0 with P' from a five-point finite difference
  // on the output grid.
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    scale = std::max(scale, std::abs(prob.potential(sol.grid[i]) * sol.values[i]));
  }
  sol.residuals.resize(n);
  sol.max_residual = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t first = std::min(i >= 2 ? i - 2 : 0, n - 5);
    std::array<double, 5> x;
    for (std::size_t k = 0; k < 5; ++k) x[k] = sol.grid[first + k];
    const auto w = first_derivative_weights(sol.grid[i], x);
    double dflux = 0.0;
    for (std::size_t k = 0; k < 5; ++k) dflux += w[k] * flux[first + k];
    const double defect = std::abs(dflux + prob.potential(sol.grid[i]) * sol.values[i]);
    sol.residuals[i] = defect == 0.0 ? 0.0 : defect / std::max(scale, 1e-300);
    sol.max_residual = std::max(sol.max_residual, sol.residuals[i]);
  }
  return sol;
}

Jet RadialSolution::evaluate(double r) const {
  const double lo = grid.front();
  const double hi = grid.back();
  if (!(r >= lo && r <= hi)) {
    throw DomainError("radial solution: r=" + std::to_string(r) + " outside [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "]");
  }
  std::size_t i = std::upper_bound(grid.begin(), grid.end(), r) - grid.begin();
  i = std::min(i == 0 ? 0 : i - 1, grid.size() - 2);
  const double r_s = problem.metric.r_s();
  const double eta_sq = problem.eta_prime * problem.eta_prime;
  // dV/dr for V = r^2 a'^2 + eta'^2 r^3/(r - r_s) - l(l+1)
  const auto potential_slope = [&](double x) {
    const double d = x - r_s;
    return 2.0 * x * problem.alpha_prime_sq + eta_sq * x * x * (2.0 * x - 3.0 * r_s) / (d * d);
  };
  const double x0 = grid[i];
  const double x1 = grid[i + 1];
  const double h = x1 - x0;
  const double t = (r - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double t4 = t3 * t;
  const double t5 = t4 * t;
  const double b0 = 1.0 - 10.0 * t3 + 15.0 * t4 - 6.0 * t5;
  const double b1 = t - 6.0 * t3 + 8.0 * t4 - 3.0 * t5;
  const double b2 = 0.5 * (t2 - 3.0 * t3 + 3.0 * t4 - t5);
  const double b3 = 0.5 * (t3 - 2.0 * t4 + t5);
  const double b4 = -4.0 * t3 + 7.0 * t4 - 3.0 * t5;
  const double b5 = 10.0 * t3 - 15.0 * t4 + 6.0 * t5;
  const auto hermite = [&](double f0, double g0, double c0, double f1, double g1, double c1) {
    return b0 * f0 + b1 * h * g0 + b2 * h * h * c0 + b3 * h * h * c1 + b4 * h * g1 + b5 * f1;
  };

  // R is interpolated from (R, R', R''), and the flux P = r(r - r_s) R'
  // separately from (P, P' = -V R, P'' = -(V' R + V R')). Differentiating
  // the R interpolant instead would amplify node noise wherever R' is small.
  double R[2], dR[2], d2R[2], P[2], dP[2], d2P[2];
  for (int k = 0; k < 2; ++k) {
    const double x = grid[i + k];
    const double v = problem.potential(x);
    const double w = x * (x - r_s);
    R[k] = values[i + k];
    dR[k] = slopes[i + k];
    P[k] = w * dR[k];
    dP[k] = -v * R[k];
    d2P[k] = -(potential_slope(x) * R[k] + v * dR[k]);
    d2R[k] = (dP[k] - (2.0 * x - r_s) * dR[k]) / w;
  }
  Jet out;
  out.v = hermite(R[0], dR[0], d2R[0], R[1], dR[1], d2R[1]);
  const double w = r * (r - r_s);
  out.d1 = hermite(P[0], dP[0], d2P[0], P[1], dP[1], d2P[1]) / w;
  out.d2 = (-problem.potential(r) * out.v - (2.0 * r - r_s) * out.d1) / w;
  return out;
}

double flat_limit_deviation(const RadialProblem& prob, double rel_tol) {
  prob.validate();
  const double r_s = prob.metric.r_s();
  if (r_s > 0.0 && prob.r_start < 100.0 * r_s) {
    throw DomainError("flat_limit_deviation: window must start at r >= 100 r_s");
  }
  RadialProblem flat = prob;
  flat.metric = MetricSpec::schwarzschild(0.0, prob.metric.c());
  const RadialSolution curved = solve_radial(prob, rel_tol);
  const RadialSolution reference = solve_radial(flat, rel_tol);
  double gap = 0.0;
  double size = 0.0;
  for (std::size_t i = 0; i < curved.grid.size(); ++i) {
    const double ref = reference.evaluate(curved.grid[i]).v;
    gap = std::max(gap, std::abs(curved.values[i] - ref));
    size = std::max(size, std::abs(ref));
  }
  return size == 0.0 ? gap : gap / size;
}

FrobeniusData frobenius_series(const RadialProblem& prob, double r) {
  const double r_s = prob.metric.r_s();
  if (!(r_s > 0.0)) throw DomainError("frobenius_series: needs r_s > 0");
  const double d = r - r_s;
  if (!(d > 0.0)) throw HorizonError("frobenius_series: r must lie outside the horizon");
  const double q = prob.eta_prime * r_s;
  const double ell_term = double(prob.ell) * double(prob.ell + 1);
  const std::complex<double> s{0.0, q};
  const std::complex<double> c1 =
      -(s + 2.0 * q * q + prob.alpha_prime_sq * r_s * r_s - ell_term) / (r_s * (1.0 + 2.0 * s));
  // d^s = exp(s log d)
  const std::complex<double> ds = std::exp(s * std::log(d));
  FrobeniusData out;
  out.exponent = s;
  out.c1 = c1;
  out.value = ds * (1.0 + c1 * d);
  out.slope = ds * (s / d * (1.0 + c1 * d) + c1);
  return out;
}

HorizonStart near_horizon_start(const RadialProblem& prob, double delta) {
  if (!(delta >= 1e-8 && delta <= 1e-2)) {
    throw DomainError("near_horizon_start: delta must lie in [1e-8, 1e-2]");
  }
  const double r_start = prob.metric.r_s() * (1.0 + delta);
  const FrobeniusData f = frobenius_series(prob, r_start);
  return {r_start, f.value.real(), f.slope.real()};
}

double wronskian(const RadialSolution& a, const RadialSolution& b, double r) {
  const Jet ra = a.evaluate(r);
  const Jet rb = b.evaluate(r);
  const double x = a.problem.metric.lapse_sq(r);
  return r * r * x * (ra.v * rb.d1 - rb.v * ra.d1);
}

ModeFunction make_schwarzschild_mode(const RadialSolution& solution, int m, int n_theta,
                                     int n_phi) {
  const RadialProblem& prob = solution.problem;
  ModeSpec spec;
  spec.family = ModeFamily::SchwarzschildNumeric;
  spec.eta = prob.eta_prime;
  spec.idx = AngularIndex(prob.ell, m);
  spec.alpha_sq = prob.alpha_prime_sq;
  spec.n_radial = 0;

  Domain support;
  support.r_min = prob.r_start;
  support.r_max = prob.r_end;
  support.n_r = 256;
  support.n_theta = n_theta;
  support.n_phi = n_phi;
  support.validate(prob.metric);

  // The solution is shared so copies of the mode stay cheap.
  auto shared = std::make_shared<const RadialSolution>(solution);
  RadialProfile profile = [shared](double r) { return shared->evaluate(r); };
  const double norm_sq = integrate_interval(prob.r_start, prob.r_end, 1024, [&](double r) {
    const double v = profile(r).v;
    return v * v * r * r;
  });
  if (!(norm_sq > 0.0)) throw NormalizationError("radial solution vanishes identically");
  spec.norm = 1.0 / std::sqrt(norm_sq);
  const double alpha_sq = prob.alpha_prime_sq;
  return ModeFunction(spec, prob.metric, support, std::move(profile),
                      [alpha_sq](double) { return alpha_sq; });
}

void write_radial_csv(std::ostream& os, const RadialSolution& sol) {
  const RadialProblem& p = sol.problem;
  char line[512];
  std::snprintf(line, sizeof line,
                "# r_s=%.17g,eta_prime=%.17g,ell=%d,alpha_prime_sq=%.17g,r_start=%.17g,r_end=%.17g,"
                "init_value=%.17g,init_slope=%.17g,rel_tol=%.17g,max_residual=%.17g\n",
                p.metric.r_s(), p.eta_prime, p.ell, p.alpha_prime_sq, p.r_start, p.r_end,
                p.init_value, p.init_slope, sol.rel_tol, sol.max_residual);
  os << line << "r,R,dR/dr,residual\n";
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    std::snprintf(line, sizeof line, "%.10g,%.10g,%.10g,%.10g\n", sol.grid[i], sol.values[i],
                  sol.slopes[i], sol.residuals[i]);
    os << line;
  }
}

}  // namespace fisher_modes
