#include <atomic>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"
#include "torus_nbc/simd/kernels.hpp"

namespace torus_nbc::simd {
namespace {

bool cpu_has_avx2() {
#if defined(TORUS_NBC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable& detect() {
  if (const char* forced = std::getenv("TORUS_NBC_SIMD")) {
    if (std::string_view(forced) == "scalar") return scalar_kernels();
  }
  if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
  return scalar_kernels();
}

std::atomic<const KernelTable*> g_override{nullptr};

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(TORUS_NBC_HAVE_AVX2)
  static const bool supported = cpu_has_avx2();
  if (supported) return &detail::avx2_table();
#endif
  return nullptr;
}

const KernelTable& active_kernels() {
  if (const KernelTable* forced = g_override.load(std::memory_order_acquire)) {
    return *forced;
  }
  static const KernelTable& detected = detect();
  return detected;
}

void set_active_kernels(const KernelTable* table) {
  g_override.store(table, std::memory_order_release);
}

}  // namespace torus_nbc::simd
