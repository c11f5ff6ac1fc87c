#include <atomic>
#include <cstdlib>
#include <string_view>

#include "lindloc/simd/kernels.hpp"

namespace lindloc::simd {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(LINDLOC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("LINDLOC_SIMD")) {
    if (std::string_view(env) == "scalar") return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& current() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
  }
  return "unknown";
}

bool backend_available(Backend b) noexcept {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
      return cpu_has_avx2();
  }
  return false;
}

Backend active_backend() noexcept { return current().load(std::memory_order_relaxed); }

bool set_backend(Backend b) noexcept {
  if (!backend_available(b)) return false;
  current().store(b, std::memory_order_relaxed);
  return true;
}

void gemm(std::size_t m, std::size_t k, std::size_t n, const cplx* a,
          const cplx* b, cplx* c) noexcept {
#if defined(LINDLOC_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::gemm(m, k, n, a, b, c);
#endif
  scalar::gemm(m, k, n, a, b, c);
}

void gemv(std::size_t m, std::size_t n, const cplx* a, const cplx* x,
          cplx* y) noexcept {
#if defined(LINDLOC_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::gemv(m, n, a, x, y);
#endif
  scalar::gemv(m, n, a, x, y);
}

void axpy(std::size_t n, cplx s, const cplx* x, cplx* y) noexcept {
#if defined(LINDLOC_HAVE_AVX2)
  if (active_backend() == Backend::avx2) return avx2::axpy(n, s, x, y);
#endif
  scalar::axpy(n, s, x, y);
}

}  // namespace lindloc::simd
