#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace urllc::kernels {

namespace {

bool cpu_has_avx2_fma() {
#if defined(URLLC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelSet& resolve() {
  if (const char* forced = std::getenv("URLLC_KERNELS")) {
    const std::string name(forced);
    if (name == "scalar") return scalar_kernels();
    if (name == "avx2") return kernels_for(Isa::Avx2);
    if (!name.empty() && name != "auto") {
      throw DomainError("URLLC_KERNELS must be scalar, avx2 or auto, got " + name);
    }
  }
  return available(Isa::Avx2) ? kernels_for(Isa::Avx2) : scalar_kernels();
}

}  // namespace

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: {
      static const bool ok = cpu_has_avx2_fma();
      return ok;
    }
  }
  return false;
}

const KernelSet& kernels_for(Isa isa) {
  if (!available(isa)) {
    throw DomainError("kernel variant not available: " + std::string(to_string(isa)));
  }
#if defined(URLLC_HAVE_AVX2)
  if (isa == Isa::Avx2) return detail::avx2_kernels();
#endif
  return scalar_kernels();
}

const KernelSet& active_kernels() {
  static const KernelSet& set = resolve();
  return set;
}

}  // namespace urllc::kernels
