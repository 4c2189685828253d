#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "fisher_modes/geometry.hpp"

namespace fisher_modes {

// Truncated integration domain: r in [r_min, r_max], the full sphere in
// angle. Node counts are per direction.
struct Domain {
  double r_min = 0.0;
  double r_max = 1.0;
  int n_r = 64;
  int n_theta = 16;
  int n_phi = 16;

  // Throws DomainError (HorizonError for r_min <= r_s) on violations.
  void validate(const MetricSpec& metric) const;

  // All node counts doubled.
  Domain refined() const;

  friend bool operator==(const Domain&, const Domain&) = default;
};

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule mapped to [a, b]. Nodes are strictly interior.
GaussRule gauss_legendre(int n, double a, double b);

// Tensor-product rule: Gauss-Legendre in r and in u = cos(theta), uniform
// midpoint rule in phi. The stored weights already include sqrt(-g).
class QuadratureGrid {
 public:
  QuadratureGrid(const MetricSpec& metric, const Domain& dom);

  std::size_t size() const noexcept { return weights_.size(); }
  CoordPoint point(std::size_t flat_index) const;
  std::span<const double> weights() const noexcept { return weights_; }
  const Domain& domain() const noexcept { return dom_; }

 private:
  Domain dom_;
  GaussRule radial_;
  std::vector<double> theta_;
  std::vector<double> phi_;
  std::vector<double> weights_;
};

using ScalarField = std::function<double(const CoordPoint&)>;

// Fills `out` (length k) with k integrand components at a point.
using VectorField = std::function<void(const CoordPoint&, std::span<double> out)>;

// Integral of f * sqrt(-g) over the domain. The tau direction is not
// integrated; callers handle it analytically.
double integrate(const MetricSpec& metric, const Domain& dom, const ScalarField& f);

// Integrates k components in one sweep over the nodes.
std::vector<double> integrate_many(const MetricSpec& metric, const Domain& dom, std::size_t k,
                                   const VectorField& f);
std::vector<double> integrate_many(const QuadratureGrid& grid, std::size_t k, const VectorField& f);

struct ConvergedIntegral {
  double value = 0.0;
  double achieved = 0.0;  // relative difference of the last two estimates
  int refinements = 0;
  Domain domain;          // domain of the returned estimate
};

// Doubles node counts (at most four times) until two successive estimates
// agree to rel_tol. Throws ConvergenceError carrying both last estimates.
ConvergedIntegral converged_integrate(const MetricSpec& metric, const Domain& dom,
                                      const ScalarField& f, double rel_tol);

// One-dimensional Gauss-Legendre integral of f over [a, b].
double integrate_interval(double a, double b, int n, const std::function<double(double)>& f);

}  // namespace fisher_modes
