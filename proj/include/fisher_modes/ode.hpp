#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fisher_modes::ode {

// Two-component first-order system y' = f(t, y).
using State = std::array<double, 2>;
using Rhs = std::function<State(double t, const State& y)>;

struct Options {
  double rel_tol = 1e-10;
  double initial_step = 0.0;  // 0 picks 1e-3 of the interval
  int max_steps = 5'000'000;
};

// One accepted Dormand-Prince 5(4) step with its continuous extension.
struct Step {
  double t0 = 0.0;
  double h = 0.0;
  std::array<State, 5> dense{};  // Hairer's rcont1..rcont5

  State at(double t) const;
};

struct Trajectory {
  std::vector<Step> steps;
  int rejected = 0;
};

// Step size fell below the floating-point resolution of t.
struct StepUnderflow : std::runtime_error {
  StepUnderflow(double t_, double h_) : std::runtime_error("step size underflow"), t(t_), h(h_) {}
  double t;
  double h;
};

// The state or the right-hand side became non-finite.
struct NonFiniteState : std::runtime_error {
  explicit NonFiniteState(double last_good) : std::runtime_error("non-finite state"), t(last_good) {}
  double t;
};

// Adaptive Dormand-Prince 5(4) from t0 to t1 > t0. The local error of every
// accepted step satisfies ||e_i / (rel_tol * scale_i)||_rms <= 1, where
// scale_i is the largest |y_i| seen so far (or the step endpoints, if larger).
Trajectory integrate_dopri5(const Rhs& f, double t0, const State& y0, double t1,
                            const Options& opt);

}  // namespace fisher_modes::ode
