// AVX2 lane. Built with -mavx2 -mfma on x86 only; dispatch lives in
// kernels.cpp and never calls into this TU unless cpuid says AVX2 is there.

#include "finmet/kernels.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace finmet::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

const __m256d kSignMask = _mm256_set1_pd(-0.0);

double sum_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(v + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += v[i];
  return hsum(acc) + tail;
}

double sum_sq_avx2(const double* v, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(v + i);
    acc = _mm256_fmadd_pd(x, x, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += v[i] * v[i];
  return hsum(acc) + tail;
}

double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double tail = 0.0;
  for (; i < n; ++i) {
    const double d = a[i] - b[i];
    tail += d * d;
  }
  return hsum(acc) + tail;
}

double sum_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
    acc = _mm256_add_pd(acc, _mm256_andnot_pd(kSignMask, d));
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += std::fabs(a[i] - b[i]);
  return hsum(acc) + tail;
}

// no vector pow: general exponents stay scalar in this lane too
double sum_abs_pow_fallback(const double* v, std::size_t n, double p) {
  return scalar().sum_abs_pow(v, n, p);
}

double sum_abs_diff_pow_fallback(const double* a, const double* b,
                                 std::size_t n, double q) {
  return scalar().sum_abs_diff_pow(a, b, n, q);
}

void min_plus_relax_avx2(double* row_i, const double* row_k, double d_ik,
                         std::size_t n) {
  const __m256d dik = _mm256_set1_pd(d_ik);
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d via = _mm256_add_pd(dik, _mm256_loadu_pd(row_k + j));
    const __m256d cur = _mm256_loadu_pd(row_i + j);
    _mm256_storeu_pd(row_i + j, _mm256_min_pd(via, cur));
  }
  for (; j < n; ++j) {
    const double via = d_ik + row_k[j];
    if (via < row_i[j]) row_i[j] = via;
  }
}

std::size_t triangle_scan_avx2(const double* row_i, const double* row_j,
                               double d_ij, std::size_t n, std::uint32_t* out) {
  const __m256d dij = _mm256_set1_pd(d_ij);
  std::size_t count = 0;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d rhs = _mm256_add_pd(dij, _mm256_loadu_pd(row_j + k));
    const __m256d lhs = _mm256_loadu_pd(row_i + k);
    const int mask =
        _mm256_movemask_pd(_mm256_cmp_pd(lhs, rhs, _CMP_GT_OQ));
    if (mask) {
      for (int bit = 0; bit < 4; ++bit)
        if (mask & (1 << bit)) out[count++] = static_cast<std::uint32_t>(k + bit);
    }
  }
  for (; k < n; ++k) {
    if (row_i[k] > d_ij + row_j[k]) out[count++] = static_cast<std::uint32_t>(k);
  }
  return count;
}

}  // namespace

const Kernels* avx2_table() {
  static const Kernels table{
      "avx2",
      sum_avx2,
      sum_sq_avx2,
      sum_abs_pow_fallback,
      sum_sq_diff_avx2,
      sum_abs_diff_avx2,
      sum_abs_diff_pow_fallback,
      min_plus_relax_avx2,
      triangle_scan_avx2,
  };
  return &table;
}

}  // namespace finmet::kernels

#endif  // __AVX2__
