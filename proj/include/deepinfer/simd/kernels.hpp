#pragma once

// Data-parallel inner loops shared by the linear algebra kernel, the forward
// executor and the violation monitor. Each instruction set provides the same
// table of entry points; the scalar table is the reference implementation and
// every other table is tested for equivalence against it.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace deepinfer::simd {

enum class Isa { Scalar, Avx2 };

struct Gram3 {
  double aa = 0.0;
  double bb = 0.0;
  double ab = 0.0;
};

struct KernelTable {
  Isa isa;
  std::string_view name;

  double (*dot)(const double* a, const double* b, std::size_t n);

  // Squared norms and inner product of two columns in one pass.
  Gram3 (*gram3)(const double* a, const double* b, std::size_t n);

  // Plane rotation: a <- c*a - s*b, b <- s*a + c*b.
  void (*rotate)(double* a, double* b, std::size_t n, double c, double s);

  // flags[i] = row[i] < lo[i] || row[i] > hi[i]. Returns the number of flags set.
  std::size_t (*flag_outside)(const double* row, const double* lo, const double* hi,
                              std::size_t n, std::uint8_t* flags);

  // counts[i] += row[i] < lo[i] || row[i] > hi[i].
  void (*accumulate_outside)(const double* row, const double* lo, const double* hi,
                             std::size_t n, std::uint64_t* counts);
};

const KernelTable& scalar_kernels();

// nullptr when the variant was not compiled in or the CPU lacks support.
const KernelTable* avx2_kernels();

// Best table for this CPU. DEEPINFER_SIMD=scalar in the environment forces the
// scalar reference path.
const KernelTable& active_kernels();

// Overrides the active table for the rest of the process. Intended for tests
// and benchmarks; not thread-safe against concurrent kernel use.
void set_active_kernels(const KernelTable& table);

std::string_view isa_name(Isa isa);

}  // namespace deepinfer::simd
