#include "deepinfer/simd/kernels.hpp"

namespace deepinfer::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

Gram3 gram3_scalar(const double* a, const double* b, std::size_t n) {
  Gram3 g;
  for (std::size_t i = 0; i < n; ++i) {
    g.aa += a[i] * a[i];
    g.bb += b[i] * b[i];
    g.ab += a[i] * b[i];
  }
  return g;
}

void rotate_scalar(double* a, double* b, std::size_t n, double c, double s) {
  for (std::size_t i = 0; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    a[i] = c * x - s * y;
    b[i] = s * x + c * y;
  }
}

std::size_t flag_outside_scalar(const double* row, const double* lo, const double* hi,
                                std::size_t n, std::uint8_t* flags) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool out = row[i] < lo[i] || row[i] > hi[i];
    flags[i] = out ? 1 : 0;
    total += out ? 1 : 0;
  }
  return total;
}

void accumulate_outside_scalar(const double* row, const double* lo, const double* hi,
                               std::size_t n, std::uint64_t* counts) {
  for (std::size_t i = 0; i < n; ++i) {
    if (row[i] < lo[i] || row[i] > hi[i]) ++counts[i];
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      Isa::Scalar,        "scalar",          dot_scalar, gram3_scalar, rotate_scalar,
      flag_outside_scalar, accumulate_outside_scalar,
  };
  return table;
}

}  // namespace deepinfer::simd
