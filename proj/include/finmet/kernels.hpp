#pragma once

#include <cstddef>
#include <cstdint>

namespace finmet::kernels {

// Inner-loop kernel table. The scalar lane is the reference; wider lanes are
// selected at runtime when the CPU supports them. Comparison-style kernels
// (min_plus_relax, triangle_scan) perform the same IEEE add/min/compare in
// every lane and must agree bitwise; accumulating kernels may differ by the
// rounding of the reduction order.
struct Kernels {
  const char* name;

  double (*sum)(const double* v, std::size_t n);
  double (*sum_sq)(const double* v, std::size_t n);
  // sum of |v_i|^p for general p; pow-bound, scalar in every lane
  double (*sum_abs_pow)(const double* v, std::size_t n, double p);

  double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
  double (*sum_abs_diff)(const double* a, const double* b, std::size_t n);
  double (*sum_abs_diff_pow)(const double* a, const double* b, std::size_t n,
                             double q);

  // row_i[j] = min(row_i[j], d_ik + row_k[j])
  void (*min_plus_relax)(double* row_i, const double* row_k, double d_ik,
                         std::size_t n);

  // writes every k with row_i[k] > d_ij + row_j[k] to out, returns the count
  std::size_t (*triangle_scan)(const double* row_i, const double* row_j,
                               double d_ij, std::size_t n, std::uint32_t* out);
};

const Kernels& scalar();

// nullptr when the CPU (or build) lacks AVX2
const Kernels* avx2();

// Runtime-selected lane. FINMET_KERNEL=scalar|avx2 overrides, read once.
const Kernels& active();

}  // namespace finmet::kernels
