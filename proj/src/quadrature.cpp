#include "fisher_modes/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "fisher_modes/errors.hpp"
#include "fisher_modes/kernels.hpp"

namespace fisher_modes {

void Domain::validate(const MetricSpec& metric) const {
  if (!std::isfinite(r_min) || !std::isfinite(r_max) || r_min < 0.0) {
    throw DomainError("domain: radii must be finite and r_min >= 0");
  }
  if (!(r_min < r_max)) throw DomainError("domain: r_min < r_max violated");
  if (n_r < 8 || n_theta < 8 || n_phi < 8) throw DomainError("domain: every node count must be >= 8");
  if (metric.kind() == MetricKind::Schwarzschild && !(r_min > metric.r_s())) {
    throw HorizonError("domain: r_min=" + std::to_string(r_min) +
                       " must lie outside the horizon r_s=" + std::to_string(metric.r_s()));
  }
}

Domain Domain::refined() const {
  Domain d = *this;
  d.n_r *= 2;
  d.n_theta *= 2;
  d.n_phi *= 2;
  return d;
}

GaussRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  const int pairs = (n + 1) / 2;
  for (int i = 0; i < pairs; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16 * std::abs(x) + 1e-300) break;
    }
    {
      // Recompute the derivative at the converged node for the weight.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = half * w;
    rule.weights[n - 1 - i] = half * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = mid;
  return rule;
}

QuadratureGrid::QuadratureGrid(const MetricSpec& metric, const Domain& dom)
    : dom_(dom), radial_(gauss_legendre(dom.n_r, dom.r_min, dom.r_max)) {
  dom.validate(metric);
  const GaussRule polar = gauss_legendre(dom.n_theta, -1.0, 1.0);
  theta_.resize(dom.n_theta);
  for (int j = 0; j < dom.n_theta; ++j) theta_[j] = std::acos(polar.nodes[j]);
  phi_.resize(dom.n_phi);
  const double dphi = 2.0 * std::numbers::pi / dom.n_phi;
  for (int k = 0; k < dom.n_phi; ++k) phi_[k] = (k + 0.5) * dphi;

  // sqrt(-g) dr dtheta dphi = r^2 dr du dphi with u = cos(theta).
  weights_.reserve(std::size_t(dom.n_r) * dom.n_theta * dom.n_phi);
  for (int i = 0; i < dom.n_r; ++i) {
    const double r = radial_.nodes[i];
    const double wr = radial_.weights[i] * r * r;
    for (int j = 0; j < dom.n_theta; ++j) {
      const double wru = wr * polar.weights[j];
      for (int k = 0; k < dom.n_phi; ++k) weights_.push_back(wru * dphi);
    }
  }
}

CoordPoint QuadratureGrid::point(std::size_t flat_index) const {
  const std::size_t np = phi_.size();
  const std::size_t nt = theta_.size();
  const std::size_t k = flat_index % np;
  const std::size_t j = (flat_index / np) % nt;
  const std::size_t i = flat_index / (np * nt);
  return CoordPoint{0.0, radial_.nodes[i], theta_[j], phi_[k]};
}

namespace {

[[noreturn]] void throw_non_finite(const CoordPoint& p, std::size_t component, double value) {
  std::ostringstream os;
  os << "integrand component " << component << " is " << value << " at node (r=" << p.r
     << ", theta=" << p.theta << ", phi=" << p.phi << ")";
  throw NonFiniteError(os.str());
}

// Fills samples[c * n + i] for every node i and component c. Nodes may be
// split across threads; each writes its own slots, so the later reduction is
// independent of the schedule.
void sample_nodes(const QuadratureGrid& grid, std::size_t k, const VectorField& f,
                  std::vector<double>& samples) {
  const std::size_t n = grid.size();
  samples.assign(n * k, 0.0);
  auto work = [&](std::size_t begin, std::size_t end) {
    std::vector<double> local(k);
    for (std::size_t i = begin; i < end; ++i) {
      const CoordPoint p = grid.point(i);
      std::fill(local.begin(), local.end(), 0.0);
      f(p, local);
      for (std::size_t c = 0; c < k; ++c) {
        if (!std::isfinite(local[c])) throw_non_finite(p, c, local[c]);
        samples[c * n + i] = local[c];
      }
    }
  };

  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t threads = std::min<std::size_t>(hw == 0 ? 1 : hw, n / 4096 + 1);
  if (threads <= 1) {
    work(0, n);
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, t, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<double> integrate_many(const QuadratureGrid& grid, std::size_t k, const VectorField& f) {
  std::vector<double> samples;
  sample_nodes(grid, k, f, samples);
  const std::size_t n = grid.size();
  std::vector<double> result(k);
  for (std::size_t c = 0; c < k; ++c) {
    result[c] = kernels::dot(std::span<const double>(samples).subspan(c * n, n), grid.weights());
  }
  return result;
}

std::vector<double> integrate_many(const MetricSpec& metric, const Domain& dom, std::size_t k,
                                   const VectorField& f) {
  return integrate_many(QuadratureGrid(metric, dom), k, f);
}

double integrate(const MetricSpec& metric, const Domain& dom, const ScalarField& f) {
  return integrate_many(metric, dom, 1, [&](const CoordPoint& p, std::span<double> out) {
    out[0] = f(p);
  })[0];
}

ConvergedIntegral converged_integrate(const MetricSpec& metric, const Domain& dom,
                                      const ScalarField& f, double rel_tol) {
  if (!(rel_tol > 0.0) || !(rel_tol <= 1e-3)) {
    throw DomainError("converged_integrate: rel_tol must lie in (0, 1e-3]");
  }
  constexpr int kMaxRefinements = 4;

  // The probe may run on several threads.
  std::atomic<bool> all_zero{true};
  auto probe = [&](const CoordPoint& p) {
    const double v = f(p);
    if (v != 0.0) all_zero.store(false, std::memory_order_relaxed);
    return v;
  };
  double previous = integrate(metric, dom, probe);
  if (all_zero) return {0.0, 0.0, 0, dom};

  Domain current_dom = dom;
  double current = previous;
  for (int refinement = 1; refinement <= kMaxRefinements; ++refinement) {
    previous = current;
    current_dom = current_dom.refined();
    current = integrate(metric, current_dom, f);
    const double scale = std::max(std::abs(current), std::abs(previous));
    const double diff = scale == 0.0 ? 0.0 : std::abs(current - previous) / scale;
    if (diff < rel_tol) return {current, diff, refinement, current_dom};
  }
  std::ostringstream os;
  os.precision(17);
  os << "quadrature did not converge to rel_tol=" << rel_tol << " after " << kMaxRefinements
     << " refinements (last estimates " << previous << ", " << current << ")";
  throw ConvergenceError(os.str(), previous, current);
}

double integrate_interval(double a, double b, int n, const std::function<double(double)>& f) {
  const GaussRule rule = gauss_legendre(n, a, b);
  std::vector<double> values(rule.nodes.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = f(rule.nodes[i]);
    if (!std::isfinite(values[i])) {
      throw NonFiniteError("integrand is non-finite at x=" + std::to_string(rule.nodes[i]));
    }
  }
  return kernels::dot(values, rule.weights);
}

}  // namespace fisher_modes
