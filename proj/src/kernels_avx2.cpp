#include <immintrin.h>

#include "ere/kernels.hpp"

namespace ere::simd::avx2 {

namespace {

// v holds in[base .. base+3] with base = B ^ (mask & ~3); lane l must receive
// element l ^ (mask & 3).
inline __m256d permute_low_bits(__m256d v, std::uint64_t low) {
  switch (low) {
    case 1: return _mm256_permute_pd(v, 0b0101);
    case 2: return _mm256_permute4x64_pd(v, 0x4E);
    case 3: return _mm256_permute4x64_pd(v, 0x1B);
    default: return v;
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void bond_apply(const BondKernelArgs& args, const double* in, double* out, std::size_t dim) {
  const __m256d aligned = _mm256_set1_pd(args.coef_aligned);
  const __m256d anti = _mm256_set1_pd(args.coef_anti);
  const __m256i one = _mm256_set1_epi64x(1);
  const __m256i zero = _mm256_setzero_si256();
  const bool uniform = args.coef_aligned == args.coef_anti;

  for (std::size_t block = 0; block < dim; block += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(args.diag + block), _mm256_loadu_pd(in + block));
    const auto b0 = static_cast<long long>(block);
    const __m256i idx = _mm256_set_epi64x(b0 + 3, b0 + 2, b0 + 1, b0);

    for (std::size_t k = 0; k < args.n_bonds; ++k) {
      const std::uint64_t mask = args.masks[k];
      const std::uint64_t base = block ^ (mask & ~std::uint64_t{3});
      const __m256d v = permute_low_bits(_mm256_loadu_pd(in + base), mask & 3U);

      __m256d c = aligned;
      if (!uniform) {
        const __m256i bi = _mm256_srl_epi64(idx, _mm_cvtsi32_si128(args.site_i[k]));
        const __m256i bj = _mm256_srl_epi64(idx, _mm_cvtsi32_si128(args.site_j[k]));
        const __m256i differ = _mm256_and_si256(_mm256_xor_si256(bi, bj), one);
        const __m256d is_aligned = _mm256_castsi256_pd(_mm256_cmpeq_epi64(differ, zero));
        c = _mm256_blendv_pd(anti, aligned, is_aligned);
      }
      acc = _mm256_add_pd(acc, _mm256_mul_pd(c, v));
    }
    _mm256_storeu_pd(out + block, acc);
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  __m256d s2 = _mm256_setzero_pd();
  __m256d s3 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 16 <= n; i += 16) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), s1);
    s2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), s2);
    s3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), s3);
  }
  for (; i + 4 <= n; i += 4) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), s0);
  }
  double s = hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3)));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  const __m256d a = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) _mm256_storeu_pd(x + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= alpha;
}

}  // namespace ere::simd::avx2
