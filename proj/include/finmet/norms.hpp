#pragma once

#include <span>

namespace finmet {

// (sum v_i^q)^{1/q} over non-negative values; empty -> 0. A single non-zero
// entry short-circuits to that entry, so one-coordinate norms are exact.
// Rejects negative values or q < 1.
double lq_combine(std::span<const double> values, double q);

// sum v_i^p over non-negative values; empty -> 0. Rejects negatives or p < 1.
double power_sum(std::span<const double> values, double p);

// lq distance between coordinate vectors of equal length. Same exactness
// fast path when the difference has a single non-zero coordinate.
double lq_distance(std::span<const double> a, std::span<const double> b,
                   double q);

}  // namespace finmet
