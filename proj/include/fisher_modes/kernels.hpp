#pragma once

// Reduction kernels behind the quadrature and the statistical distance.
//
// Each kernel exists as a scalar reference and as an AVX2/FMA variant; the
// unqualified entry points dispatch once, at first use, on the CPU features
// reported at runtime. All variants use error-free transformations (TwoSum /
// TwoProduct), so their results agree to a few ulps of the exact value and are
// individually deterministic: a fixed input gives a fixed output regardless of
// threading elsewhere in the program.

#include <span>
#include <string_view>

namespace fisher_modes::kernels {

enum class Isa { Scalar, Avx2 };

// Sum of (sqrt(a_i) - sqrt(b_i))^2 and of (sqrt(a_i) + sqrt(b_i))^2.
struct ChordSums {
  double minus_sq = 0.0;
  double plus_sq = 0.0;
};

namespace scalar {
double dot(std::span<const double> x, std::span<const double> y);
ChordSums root_chord_sums(std::span<const double> a, std::span<const double> b);
}  // namespace scalar

#if defined(FISHER_MODES_HAVE_AVX2)
namespace avx2 {
double dot(std::span<const double> x, std::span<const double> y);
ChordSums root_chord_sums(std::span<const double> a, std::span<const double> b);
}  // namespace avx2
#endif

// Variant the dispatching entry points use on this machine.
Isa active_isa();
std::string_view isa_name(Isa isa);

// Compensated dot product; spans must have equal length.
double dot(std::span<const double> x, std::span<const double> y);

ChordSums root_chord_sums(std::span<const double> a, std::span<const double> b);

}  // namespace fisher_modes::kernels
