#include "finmet/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "finmet/kernels.hpp"

namespace finmet {
namespace {

void require_nonneg(std::span<const double> values) {
  for (double v : values) {
    if (!(v >= 0.0))
      throw std::invalid_argument("norms: values must be non-negative");
  }
}

void require_exponent(double e, const char* what) {
  if (!(e >= 1.0) || !std::isfinite(e))
    throw std::invalid_argument(std::string(what) + " must be >= 1 and finite");
}

}  // namespace

double power_sum(std::span<const double> values, double p) {
  require_exponent(p, "p");
  require_nonneg(values);
  const auto& k = kernels::active();
  if (p == 1.0) return k.sum(values.data(), values.size());
  if (p == 2.0) return k.sum_sq(values.data(), values.size());
  return k.sum_abs_pow(values.data(), values.size(), p);
}

double lq_combine(std::span<const double> values, double q) {
  require_exponent(q, "q");
  require_nonneg(values);
  // exact single-support path
  std::size_t nonzero = 0;
  double last = 0.0;
  for (double v : values) {
    if (v != 0.0) {
      ++nonzero;
      last = v;
      if (nonzero > 1) break;
    }
  }
  if (nonzero == 0) return 0.0;
  if (nonzero == 1) return last;

  const auto& k = kernels::active();
  if (q == 1.0) return k.sum(values.data(), values.size());
  if (q == 2.0) return std::sqrt(k.sum_sq(values.data(), values.size()));
  return std::pow(k.sum_abs_pow(values.data(), values.size(), q), 1.0 / q);
}

double lq_distance(std::span<const double> a, std::span<const double> b,
                   double q) {
  require_exponent(q, "q");
  if (a.size() != b.size())
    throw std::invalid_argument("lq_distance: length mismatch");
  std::size_t nonzero = 0;
  double last = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (d != 0.0) {
      ++nonzero;
      last = std::fabs(d);
      if (nonzero > 1) break;
    }
  }
  if (nonzero == 0) return 0.0;
  if (nonzero == 1) return last;

  const auto& k = kernels::active();
  if (q == 1.0) return k.sum_abs_diff(a.data(), b.data(), a.size());
  if (q == 2.0) return std::sqrt(k.sum_sq_diff(a.data(), b.data(), a.size()));
  return std::pow(k.sum_abs_diff_pow(a.data(), b.data(), a.size(), q),
                  1.0 / q);
}

}  // namespace finmet
