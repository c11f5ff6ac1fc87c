#include "lindloc/simd/kernels.hpp"

#include <algorithm>

namespace lindloc::simd::scalar {

// Explicit real arithmetic: std::complex operator* carries NaN/inf recovery
// branches that defeat vectorization and are never needed here.

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) noexcept {
  std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real();
      const double ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) continue;
      const cplx* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = cplx(crow[j].real() + (ar * br - ai * bi),
                       crow[j].imag() + (ar * bi + ai * br));
      }
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept {
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * n;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      re += arow[j].real() * x[j].real() - arow[j].imag() * x[j].imag();
      im += arow[j].real() * x[j].imag() + arow[j].imag() * x[j].real();
    }
    y[i] = cplx(re, im);
  }
}

void axpy(std::size_t n, cplx s, const cplx* x, cplx* y) noexcept {
  const double sr = s.real();
  const double si = s.imag();
  for (std::size_t j = 0; j < n; ++j) {
    y[j] = cplx(y[j].real() + (sr * x[j].real() - si * x[j].imag()),
                y[j].imag() + (sr * x[j].imag() + si * x[j].real()));
  }
}

}  // namespace lindloc::simd::scalar
