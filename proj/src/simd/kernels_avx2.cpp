// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "lindloc/simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>

namespace lindloc::simd::avx2 {

namespace {

// Interleaved complex<double>: one __m256d holds two complex values
// [re0, im0, re1, im1].

inline const double* as_doubles(const cplx* p) noexcept {
  return reinterpret_cast<const double*>(p);
}
inline double* as_doubles(cplx* p) noexcept {
  return reinterpret_cast<double*>(p);
}

// acc + s * v for two packed complex values, s given as broadcast (sr, si).
inline __m256d cmul_acc(__m256d acc, __m256d sr, __m256d si, __m256d v) noexcept {
  const __m256d swapped = _mm256_permute_pd(v, 0b0101);  // [im0, re0, im1, re1]
  const __m256d cross = _mm256_mul_pd(si, swapped);
  // even lanes: sr*re - si*im, odd lanes: sr*im + si*re
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(sr, v, cross));
}

inline __m128d cmul_acc1(__m128d acc, __m128d sr, __m128d si, __m128d v) noexcept {
  const __m128d swapped = _mm_permute_pd(v, 0b01);
  const __m128d cross = _mm_mul_pd(si, swapped);
  return _mm_add_pd(acc, _mm_fmaddsub_pd(sr, v, cross));
}

}  // namespace

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) noexcept {
  std::fill(c, c + m * n, cplx{});
  const std::size_t pairs = n / 2;
  const bool tail = (n % 2) != 0;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = as_doubles(c + i * n);
    for (std::size_t p = 0; p < k; ++p) {
      const cplx s = a[i * k + p];
      if (s.real() == 0.0 && s.imag() == 0.0) continue;
      const __m256d sr = _mm256_set1_pd(s.real());
      const __m256d si = _mm256_set1_pd(s.imag());
      const double* brow = as_doubles(b + p * n);
      for (std::size_t j = 0; j < pairs; ++j) {
        const __m256d v = _mm256_loadu_pd(brow + 4 * j);
        const __m256d acc = _mm256_loadu_pd(crow + 4 * j);
        _mm256_storeu_pd(crow + 4 * j, cmul_acc(acc, sr, si, v));
      }
      if (tail) {
        const std::size_t off = 4 * pairs;
        const __m128d v = _mm_loadu_pd(brow + off);
        const __m128d acc = _mm_loadu_pd(crow + off);
        _mm_storeu_pd(crow + off, cmul_acc1(acc, _mm256_castpd256_pd128(sr),
                                            _mm256_castpd256_pd128(si), v));
      }
    }
  }
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept {
  const std::size_t pairs = n / 2;
  const bool tail = (n % 2) != 0;
  const double* xd = as_doubles(x);
  for (std::size_t i = 0; i < m; ++i) {
    const double* arow = as_doubles(a + i * n);
    __m256d acc_re = _mm256_setzero_pd();  // [ar*xr, ai*xr, ...]
    __m256d acc_im = _mm256_setzero_pd();  // [ai*xi, ar*xi, ...]
    for (std::size_t j = 0; j < pairs; ++j) {
      const __m256d av = _mm256_loadu_pd(arow + 4 * j);
      const __m256d xv = _mm256_loadu_pd(xd + 4 * j);
      const __m256d xr = _mm256_movedup_pd(xv);
      const __m256d xi = _mm256_permute_pd(xv, 0b1111);
      acc_re = _mm256_fmadd_pd(av, xr, acc_re);
      acc_im = _mm256_fmadd_pd(_mm256_permute_pd(av, 0b0101), xi, acc_im);
    }
    // [re0, im0, re1, im1]
    const __m256d sum = _mm256_addsub_pd(acc_re, acc_im);
    __m128d lo = _mm256_castpd256_pd128(sum);
    const __m128d hi = _mm256_extractf128_pd(sum, 1);
    lo = _mm_add_pd(lo, hi);
    if (tail) {
      const std::size_t off = 4 * pairs;
      const __m128d av = _mm_loadu_pd(arow + off);
      const __m128d xv = _mm_loadu_pd(xd + off);
      const __m128d xr = _mm_movedup_pd(xv);
      const __m128d xi = _mm_permute_pd(xv, 0b11);
      const __m128d pr = _mm_mul_pd(av, xr);
      const __m128d pi = _mm_mul_pd(_mm_permute_pd(av, 0b01), xi);
      lo = _mm_add_pd(lo, _mm_addsub_pd(pr, pi));
    }
    _mm_storeu_pd(as_doubles(y + i), lo);
  }
}

void axpy(std::size_t n, cplx s, const cplx* x, cplx* y) noexcept {
  const __m256d sr = _mm256_set1_pd(s.real());
  const __m256d si = _mm256_set1_pd(s.imag());
  const double* xd = as_doubles(x);
  double* yd = as_doubles(y);
  const std::size_t pairs = n / 2;
  for (std::size_t j = 0; j < pairs; ++j) {
    const __m256d v = _mm256_loadu_pd(xd + 4 * j);
    const __m256d acc = _mm256_loadu_pd(yd + 4 * j);
    _mm256_storeu_pd(yd + 4 * j, cmul_acc(acc, sr, si, v));
  }
  if (n % 2 != 0) {
    const std::size_t off = 4 * pairs;
    const __m128d v = _mm_loadu_pd(xd + off);
    const __m128d acc = _mm_loadu_pd(yd + off);
    _mm_storeu_pd(yd + off, cmul_acc1(acc, _mm256_castpd256_pd128(sr),
                                      _mm256_castpd256_pd128(si), v));
  }
}

}  // namespace lindloc::simd::avx2
