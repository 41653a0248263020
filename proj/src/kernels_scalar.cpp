#include <cmath>

#include "finmet/kernels.hpp"

namespace finmet::kernels {
namespace {

double sum_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += v[i];
  return acc;
}

double sum_sq_scalar(const double* v, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += v[i] * v[i];
  return acc;
}

double sum_abs_pow_scalar(const double* v, std::size_t n, double p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::pow(std::fabs(v[i]), p);
  return acc;
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

double sum_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::fabs(a[i] - b[i]);
  return acc;
}

double sum_abs_diff_pow_scalar(const double* a, const double* b, std::size_t n,
                               double q) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += std::pow(std::fabs(a[i] - b[i]), q);
  return acc;
}

void min_plus_relax_scalar(double* row_i, const double* row_k, double d_ik,
                           std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    const double via = d_ik + row_k[j];
    if (via < row_i[j]) row_i[j] = via;
  }
}

std::size_t triangle_scan_scalar(const double* row_i, const double* row_j,
                                 double d_ij, std::size_t n,
                                 std::uint32_t* out) {
  std::size_t count = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (row_i[k] > d_ij + row_j[k]) out[count++] = static_cast<std::uint32_t>(k);
  }
  return count;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels table{
      "scalar",
      sum_scalar,
      sum_sq_scalar,
      sum_abs_pow_scalar,
      sum_sq_diff_scalar,
      sum_abs_diff_scalar,
      sum_abs_diff_pow_scalar,
      min_plus_relax_scalar,
      triangle_scan_scalar,
  };
  return table;
}

}  // namespace finmet::kernels
