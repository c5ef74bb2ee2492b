#include <atomic>
#include <cstdlib>
#include <string_view>

#include "deepinfer/simd/kernels.hpp"

namespace deepinfer::simd {

#if defined(DEEPINFER_WITH_AVX2)
const KernelTable& avx2_kernel_table();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(DEEPINFER_WITH_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& select_default() {
  if (const char* env = std::getenv("DEEPINFER_SIMD")) {
    if (std::string_view(env) == "scalar") return scalar_kernels();
  }
  if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
  return scalar_kernels();
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{&select_default()};
  return slot;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if defined(DEEPINFER_WITH_AVX2)
  static const bool supported = cpu_has_avx2();
  return supported ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

void set_active_kernels(const KernelTable& table) {
  active_slot().store(&table, std::memory_order_release);
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace deepinfer::simd
