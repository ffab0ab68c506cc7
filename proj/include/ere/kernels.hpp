#pragma once

// Inner-loop kernels with a scalar reference implementation and SIMD variants
// chosen at runtime. The Hamiltonian kernel is bitwise identical across
// variants (same operation order, no FMA contraction); reductions such as
// dot() differ from the scalar path only by summation order.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace ere::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

/// Arguments of the bond-flip Hamiltonian kernel.
struct BondKernelArgs {
  const double* diag = nullptr;
  const std::uint64_t* masks = nullptr;
  const int* site_i = nullptr;
  const int* site_j = nullptr;
  std::size_t n_bonds = 0;
  double coef_aligned = 0.0;
  double coef_anti = 0.0;
};

struct KernelTable {
  Isa isa;
  // out[b] = diag[b]*in[b] + sum_k c_k(b) * in[b ^ mask_k]; dim must be a multiple of 4.
  void (*bond_apply)(const BondKernelArgs& args, const double* in, double* out, std::size_t dim);
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
};

/// Best ISA supported by this CPU and build.
Isa detected_isa();
bool isa_available(Isa isa);

/// Kernel table in effect. Honors force_isa() and the ERE_ISA environment
/// variable ("scalar" or "avx2").
const KernelTable& kernels();
const KernelTable& kernels_for(Isa isa);

/// Pins the dispatch (nullopt restores auto-detection). Throws UnsupportedError
/// when the ISA is not available.
void force_isa(std::optional<Isa> isa);

namespace scalar {
void bond_apply(const BondKernelArgs& args, const double* in, double* out, std::size_t dim);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace scalar

#if defined(ERE_HAVE_AVX2_KERNELS)
namespace avx2 {
void bond_apply(const BondKernelArgs& args, const double* in, double* out, std::size_t dim);
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace avx2
#endif

// Span conveniences over the active table.
inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels().dot(a.data(), b.data(), a.size());
}
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  kernels().axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(double alpha, std::span<double> x) { kernels().scale(alpha, x.data(), x.size()); }

}  // namespace ere::simd
