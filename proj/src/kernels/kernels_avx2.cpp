// Compiled with -mavx2 -mfma; only called after a runtime CPU check.
#include <immintrin.h>

#include <cmath>
#include <cstddef>

#include "eft.hpp"
#include "fisher_modes/kernels.hpp"

namespace fisher_modes::kernels::avx2 {
namespace {

// Four independent compensated accumulators, one per lane.
struct LaneAccumulator {
  __m256d sum = _mm256_setzero_pd();
  __m256d err = _mm256_setzero_pd();

  void add_product(__m256d a, __m256d b) {
    const __m256d p = _mm256_mul_pd(a, b);
    const __m256d perr = _mm256_fmsub_pd(a, b, p);
    const __m256d s = _mm256_add_pd(sum, p);
    const __m256d z = _mm256_sub_pd(s, sum);
    const __m256d serr =
        _mm256_add_pd(_mm256_sub_pd(sum, _mm256_sub_pd(s, z)), _mm256_sub_pd(p, z));
    err = _mm256_add_pd(err, _mm256_add_pd(perr, serr));
    sum = s;
  }

  // Lanes are folded in index order so the result is reproducible.
  eft::Compensated fold() const {
    alignas(32) double s[4];
    alignas(32) double e[4];
    _mm256_store_pd(s, sum);
    _mm256_store_pd(e, err);
    eft::Compensated out;
    for (int lane = 0; lane < 4; ++lane) {
      out.add(s[lane]);
      out.err += e[lane];
    }
    return out;
  }
};

}  // namespace

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const std::size_t blocked = n - n % 4;
  LaneAccumulator lanes;
  for (std::size_t i = 0; i < blocked; i += 4) {
    lanes.add_product(_mm256_loadu_pd(x.data() + i), _mm256_loadu_pd(y.data() + i));
  }
  eft::Compensated acc = lanes.fold();
  for (std::size_t i = blocked; i < n; ++i) acc.add_product(x[i], y[i]);
  return acc.result();
}

ChordSums root_chord_sums(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t blocked = n - n % 4;
  LaneAccumulator minus;
  LaneAccumulator plus;
  for (std::size_t i = 0; i < blocked; i += 4) {
    const __m256d ra = _mm256_sqrt_pd(_mm256_loadu_pd(a.data() + i));
    const __m256d rb = _mm256_sqrt_pd(_mm256_loadu_pd(b.data() + i));
    const __m256d d = _mm256_sub_pd(ra, rb);
    const __m256d s = _mm256_add_pd(ra, rb);
    minus.add_product(d, d);
    plus.add_product(s, s);
  }
  eft::Compensated m = minus.fold();
  eft::Compensated p = plus.fold();
  for (std::size_t i = blocked; i < n; ++i) {
    const double ra = std::sqrt(a[i]);
    const double rb = std::sqrt(b[i]);
    m.add_product(ra - rb, ra - rb);
    p.add_product(ra + rb, ra + rb);
  }
  return {m.result(), p.result()};
}

}  // namespace fisher_modes::kernels::avx2
