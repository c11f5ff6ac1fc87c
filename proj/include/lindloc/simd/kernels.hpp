#pragma once

// Dense complex kernels behind ComplexMatrix products and superoperator
// application. Each kernel has a portable scalar reference and, where the
// CPU supports it, an AVX2+FMA variant. The variant is picked once at
// startup and can be overridden (tests, LINDLOC_SIMD=scalar).

#include <complex>
#include <cstddef>
#include <string_view>

namespace lindloc::simd {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;

/// True when this binary carries the variant and the CPU can run it.
bool backend_available(Backend b) noexcept;

Backend active_backend() noexcept;

/// Switches the process-wide backend. Returns false (and leaves the active
/// backend unchanged) when `b` is unavailable.
bool set_backend(Backend b) noexcept;

/// C[m x n] = A[m x k] * B[k x n], all row-major, C must not alias A or B.
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) noexcept;

/// y[m] = A[m x n] * x[n], row-major. y must not alias x.
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept;

/// y += s * x
void axpy(std::size_t n, cplx s, const cplx* x, cplx* y) noexcept;

namespace scalar {
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) noexcept;
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept;
void axpy(std::size_t n, cplx s, const cplx* x, cplx* y) noexcept;
}  // namespace scalar

#if defined(LINDLOC_HAVE_AVX2)
namespace avx2 {
void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) noexcept;
void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept;
void axpy(std::size_t n, cplx s, const cplx* x, cplx* y) noexcept;
}  // namespace avx2
#endif

}  // namespace lindloc::simd
