#pragma once

#include <cmath>

namespace fisher_modes {

// Second-order forward-mode jet: value plus first and second derivative with
// respect to one scalar variable. The special functions are templated on the
// scalar type so the same recurrences give exact derivatives of the modes.
struct Jet {
  double v = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT: constants promote implicitly
  constexpr Jet(double value, double first, double second) : v(value), d1(first), d2(second) {}

  static constexpr Jet variable(double x) { return {x, 1.0, 0.0}; }

  constexpr Jet operator-() const { return {-v, -d1, -d2}; }

  constexpr Jet& operator+=(const Jet& o) {
    v += o.v;
    d1 += o.d1;
    d2 += o.d2;
    return *this;
  }
  constexpr Jet& operator-=(const Jet& o) {
    v -= o.v;
    d1 -= o.d1;
    d2 -= o.d2;
    return *this;
  }
  constexpr Jet& operator*=(const Jet& o) {
    *this = Jet{v * o.v, d1 * o.v + v * o.d1, d2 * o.v + 2.0 * d1 * o.d1 + v * o.d2};
    return *this;
  }
  constexpr Jet& operator/=(const Jet& o) {
    const double q = v / o.v;
    const double q1 = (d1 - q * o.d1) / o.v;
    const double q2 = (d2 - 2.0 * q1 * o.d1 - q * o.d2) / o.v;
    *this = Jet{q, q1, q2};
    return *this;
  }
};

constexpr Jet operator+(Jet a, const Jet& b) { return a += b; }
constexpr Jet operator-(Jet a, const Jet& b) { return a -= b; }
constexpr Jet operator*(Jet a, const Jet& b) { return a *= b; }
constexpr Jet operator/(Jet a, const Jet& b) { return a /= b; }

// Chain rule for y = f(x) given f, f', f'' at x.v.
constexpr Jet compose(const Jet& x, double f, double df, double d2f) {
  return {f, df * x.d1, d2f * x.d1 * x.d1 + df * x.d2};
}

inline Jet sin(const Jet& x) {
  const double s = std::sin(x.v);
  const double c = std::cos(x.v);
  return compose(x, s, c, -s);
}

inline Jet cos(const Jet& x) {
  const double s = std::sin(x.v);
  const double c = std::cos(x.v);
  return compose(x, c, -s, -c);
}

inline Jet exp(const Jet& x) {
  const double e = std::exp(x.v);
  return compose(x, e, e, e);
}

inline Jet sqrt(const Jet& x) {
  const double s = std::sqrt(x.v);
  return compose(x, s, 0.5 / s, -0.25 / (s * x.v));
}

inline double value_of(double x) { return x; }
inline double value_of(const Jet& x) { return x.v; }

template <class T>
T ipow(T base, int exponent) {
  T result{1.0};
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace fisher_modes
