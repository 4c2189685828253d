#include <cmath>
#include <cstddef>

#include "eft.hpp"
#include "fisher_modes/kernels.hpp"

namespace fisher_modes::kernels::scalar {

double dot(std::span<const double> x, std::span<const double> y) {
  eft::Compensated acc;
  for (std::size_t i = 0; i < x.size(); ++i) acc.add_product(x[i], y[i]);
  return acc.result();
}

ChordSums root_chord_sums(std::span<const double> a, std::span<const double> b) {
  eft::Compensated minus;
  eft::Compensated plus;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double ra = std::sqrt(a[i]);
    const double rb = std::sqrt(b[i]);
    const double d = ra - rb;
    const double s = ra + rb;
    minus.add_product(d, d);
    plus.add_product(s, s);
  }
  return {minus.result(), plus.result()};
}

}  // namespace fisher_modes::kernels::scalar
