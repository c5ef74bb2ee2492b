// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "deepinfer/simd/kernels.hpp"

namespace deepinfer::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  const __m128d swapped = _mm_unpackhi_pd(pair, pair);
  return _mm_cvtsd_f64(_mm_add_sd(pair, swapped));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

Gram3 gram3_avx2(const double* a, const double* b, std::size_t n) {
  __m256d aa = _mm256_setzero_pd();
  __m256d bb = _mm256_setzero_pd();
  __m256d ab = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    aa = _mm256_fmadd_pd(va, va, aa);
    bb = _mm256_fmadd_pd(vb, vb, bb);
    ab = _mm256_fmadd_pd(va, vb, ab);
  }
  Gram3 g{hsum(aa), hsum(bb), hsum(ab)};
  for (; i < n; ++i) {
    g.aa += a[i] * a[i];
    g.bb += b[i] * b[i];
    g.ab += a[i] * b[i];
  }
  return g;
}

void rotate_avx2(double* a, double* b, std::size_t n, double c, double s) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(a + i);
    const __m256d y = _mm256_loadu_pd(b + i);
    _mm256_storeu_pd(a + i, _mm256_fmsub_pd(vc, x, _mm256_mul_pd(vs, y)));
    _mm256_storeu_pd(b + i, _mm256_fmadd_pd(vs, x, _mm256_mul_pd(vc, y)));
  }
  for (; i < n; ++i) {
    const double x = a[i];
    const double y = b[i];
    a[i] = c * x - s * y;
    b[i] = s * x + c * y;
  }
}

inline __m256d outside_mask(const double* row, const double* lo, const double* hi) {
  const __m256d v = _mm256_loadu_pd(row);
  const __m256d below = _mm256_cmp_pd(v, _mm256_loadu_pd(lo), _CMP_LT_OQ);
  const __m256d above = _mm256_cmp_pd(v, _mm256_loadu_pd(hi), _CMP_GT_OQ);
  return _mm256_or_pd(below, above);
}

std::size_t flag_outside_avx2(const double* row, const double* lo, const double* hi,
                              std::size_t n, std::uint8_t* flags) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const int bits = _mm256_movemask_pd(outside_mask(row + i, lo + i, hi + i));
    flags[i] = bits & 1;
    flags[i + 1] = (bits >> 1) & 1;
    flags[i + 2] = (bits >> 2) & 1;
    flags[i + 3] = (bits >> 3) & 1;
    total += static_cast<std::size_t>(__builtin_popcount(static_cast<unsigned>(bits)));
  }
  for (; i < n; ++i) {
    const bool out = row[i] < lo[i] || row[i] > hi[i];
    flags[i] = out ? 1 : 0;
    total += out ? 1 : 0;
  }
  return total;
}

void accumulate_outside_avx2(const double* row, const double* lo, const double* hi,
                             std::size_t n, std::uint64_t* counts) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // An all-ones lane is -1 as a 64-bit integer, so subtracting the mask adds one.
    const __m256i mask = _mm256_castpd_si256(outside_mask(row + i, lo + i, hi + i));
    auto* dst = reinterpret_cast<__m256i*>(counts + i);
    _mm256_storeu_si256(dst, _mm256_sub_epi64(_mm256_loadu_si256(dst), mask));
  }
  for (; i < n; ++i) {
    if (row[i] < lo[i] || row[i] > hi[i]) ++counts[i];
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{
      Isa::Avx2,        "avx2",          dot_avx2, gram3_avx2, rotate_avx2,
      flag_outside_avx2, accumulate_outside_avx2,
  };
  return table;
}

}  // namespace deepinfer::simd
