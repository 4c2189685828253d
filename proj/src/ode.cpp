#include "fisher_modes/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fisher_modes::ode {
namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

bool finite(const State& y) { return std::isfinite(y[0]) && std::isfinite(y[1]); }

}  // namespace

State Step::at(double t) const {
  const double s = (t - t0) / h;
  const double s1 = 1.0 - s;
  State y;
  for (int i = 0; i < 2; ++i) {
    y[i] = dense[0][i] +
           s * (dense[1][i] + s1 * (dense[2][i] + s * (dense[3][i] + s1 * dense[4][i])));
  }
  return y;
}

Trajectory integrate_dopri5(const Rhs& f, double t0, const State& y0, double t1,
                            const Options& opt) {
  Trajectory out;
  State y = y0;
  double t = t0;
  double h = opt.initial_step > 0.0 ? opt.initial_step : 1e-3 * (t1 - t0);
  h = std::min(h, t1 - t0);
  State scale{std::abs(y0[0]), std::abs(y0[1])};
  State k1 = f(t, y);
  if (!finite(y) || !finite(k1)) throw NonFiniteState(t);

  auto axpy = [](const State& base, double hh, std::initializer_list<std::pair<double, const State*>> terms) {
    State r = base;
    for (const auto& [coef, k] : terms) {
      r[0] += hh * coef * (*k)[0];
      r[1] += hh * coef * (*k)[1];
    }
    return r;
  };

  int steps = 0;
  while (t < t1) {
    if (++steps > opt.max_steps) throw StepUnderflow(t, h);
    const bool last = t + h >= t1;
    if (last) h = t1 - t;
    if (h <= 8.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), 1e-300)) {
      throw StepUnderflow(t, h);
    }

    const State k2 = f(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = f(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = f(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = f(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 =
        f(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State y_new =
        axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const double t_new = last ? t1 : t + h;
    const State k7 = f(t_new, y_new);

    double err = 0.0;
    bool ok = finite(y_new) && finite(k7);
    if (ok) {
      for (int i = 0; i < 2; ++i) {
        const double e =
            h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
        const double sc = std::max({scale[i], std::abs(y[i]), std::abs(y_new[i])});
        const double denom = opt.rel_tol * sc;
        const double q = denom > 0.0 ? e / denom : (e == 0.0 ? 0.0 : 1e300);
        err += q * q;
      }
      err = std::sqrt(0.5 * err);
      ok = std::isfinite(err);
    }
    if (!ok) {
      // A non-finite trial may just be a step that reached too far; shrink.
      h *= 0.1;
      ++out.rejected;
      if (h <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(t)) throw NonFiniteState(t);
      continue;
    }

    if (err <= 1.0) {
      Step st;
      st.t0 = t;
      st.h = h;
      for (int i = 0; i < 2; ++i) {
        const double dy = y_new[i] - y[i];
        const double bspl = h * k1[i] - dy;
        st.dense[0][i] = y[i];
        st.dense[1][i] = dy;
        st.dense[2][i] = bspl;
        st.dense[3][i] = dy - h * k7[i] - bspl;
        st.dense[4][i] =
            h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
        scale[i] = std::max(scale[i], std::abs(y_new[i]));
      }
      out.steps.push_back(st);
      t = t_new;
      y = y_new;
      k1 = k7;
      const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
      h *= grow;
    } else {
      ++out.rejected;
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
    }
  }
  return out;
}

}  // namespace fisher_modes::ode
