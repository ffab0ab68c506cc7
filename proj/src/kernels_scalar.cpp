#include "ere/kernels.hpp"

namespace ere::simd::scalar {

void bond_apply(const BondKernelArgs& args, const double* in, double* out, std::size_t dim) {
  for (std::size_t b = 0; b < dim; ++b) {
    double acc = args.diag[b] * in[b];
    for (std::size_t k = 0; k < args.n_bonds; ++k) {
      const auto differ = ((b >> args.site_i[k]) ^ (b >> args.site_j[k])) & 1U;
      const double c = differ ? args.coef_anti : args.coef_aligned;
      const double term = c * in[b ^ args.masks[k]];
      acc = acc + term;
    }
    out[b] = acc;
  }
}

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

}  // namespace ere::simd::scalar
