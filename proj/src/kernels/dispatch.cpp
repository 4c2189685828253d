#include "fisher_modes/kernels.hpp"

#include <cstdlib>
#include <string>

#include "fisher_modes/errors.hpp"

namespace fisher_modes::kernels {
namespace {

Isa detect() {
  // FISHER_MODES_ISA=scalar pins the reference kernels.
  if (const char* forced = std::getenv("FISHER_MODES_ISA"); forced && std::string(forced) == "scalar") {
    return Isa::Scalar;
  }
#if defined(FISHER_MODES_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return Isa::Avx2;
#endif
  return Isa::Scalar;
}

void require_same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw ShapeError(std::string(what) + ": length mismatch (" + std::to_string(a) + " vs " +
                     std::to_string(b) + ")");
  }
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

double dot(std::span<const double> x, std::span<const double> y) {
  require_same_length(x.size(), y.size(), "dot");
#if defined(FISHER_MODES_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

ChordSums root_chord_sums(std::span<const double> a, std::span<const double> b) {
  require_same_length(a.size(), b.size(), "root_chord_sums");
#if defined(FISHER_MODES_HAVE_AVX2)
  if (active_isa() == Isa::Avx2) return avx2::root_chord_sums(a, b);
#endif
  return scalar::root_chord_sums(a, b);
}

}  // namespace fisher_modes::kernels
