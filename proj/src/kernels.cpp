#include "ere/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "ere/error.hpp"

namespace ere::simd {

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::bond_apply, &scalar::dot, &scalar::axpy,
                                   &scalar::scale};
#if defined(ERE_HAVE_AVX2_KERNELS)
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::bond_apply, &avx2::dot, &avx2::axpy,
                                 &avx2::scale};
#endif

bool cpu_has_avx2() {
#if defined(ERE_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa env_or_detected() {
  const Isa best = detected_isa();
  if (const char* env = std::getenv("ERE_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::Scalar;
    if (v == "avx2" && best == Isa::Avx2) return Isa::Avx2;
  }
  return best;
}

// -1 = not forced
std::atomic<int> g_forced{-1};

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

bool isa_available(Isa isa) { return isa == Isa::Scalar || detected_isa() == isa; }

const KernelTable& kernels_for(Isa isa) {
  if (!isa_available(isa)) {
    throw UnsupportedError("ISA " + std::string(isa_name(isa)) + " not available on this CPU/build");
  }
#if defined(ERE_HAVE_AVX2_KERNELS)
  if (isa == Isa::Avx2) return kAvx2Table;
#endif
  return kScalarTable;
}

const KernelTable& kernels() {
  const int forced = g_forced.load(std::memory_order_relaxed);
  if (forced >= 0) return kernels_for(static_cast<Isa>(forced));
  static const Isa chosen = env_or_detected();
  return kernels_for(chosen);
}

void force_isa(std::optional<Isa> isa) {
  if (!isa) {
    g_forced.store(-1);
    return;
  }
  if (!isa_available(*isa)) {
    throw UnsupportedError("ISA " + std::string(isa_name(*isa)) + " not available on this CPU/build");
  }
  g_forced.store(static_cast<int>(*isa));
}

}  // namespace ere::simd
