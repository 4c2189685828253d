#pragma once

#include <cmath>

// Error-free transformations shared by the scalar kernels and the horizontal
// reductions of the SIMD kernels.
namespace fisher_modes::kernels::eft {

struct Compensated {
  double sum = 0.0;
  double err = 0.0;

  void add(double value) {
    const double s = sum + value;
    const double z = s - sum;
    err += (sum - (s - z)) + (value - z);
    sum = s;
  }

  void add_product(double a, double b) {
    const double p = a * b;
    err += std::fma(a, b, -p);
    add(p);
  }

  void merge(const Compensated& other) {
    add(other.sum);
    err += other.err;
  }

  double result() const { return sum + err; }
};

}  // namespace fisher_modes::kernels::eft
