#pragma once

// Shared test-data builders: random repaired metrics, line spaces, and
// synthetic reduction instances with exact single-coordinate power maps.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "finmet/metric_space.hpp"
#include "finmet/random.hpp"
#include "finmet/reduction.hpp"

namespace finmet::testgen {

// Random symmetric matrix repaired into a metric by all-pairs shortest path.
inline FiniteMetricSpace random_metric(std::size_t n, RandomSource& rng,
                                       double lo = 0.2, double hi = 2.0) {
  std::vector<std::string> labels(n);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) labels[i] = "p" + std::to_string(i);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i * n + j] = d[j * n + i] = rng.uniform(lo, hi);
  return shortest_path_repair(FiniteMetricSpace(labels, d, false));
}

inline FiniteMetricSpace random_line(std::size_t n, RandomSource& rng,
                                     double lo = 0.0, double hi = 5.0) {
  std::vector<double> pos(n);
  for (auto& x : pos) x = rng.uniform(lo, hi);
  // keep points apart so the result is a true metric
  std::sort(pos.begin(), pos.end());
  for (std::size_t i = 1; i < n; ++i)
    if (pos[i] - pos[i - 1] < 1e-6) pos[i] = pos[i - 1] + 1e-3 * (1.0 + rng.uniform01());
  return FiniteMetricSpace::line(pos);
}

// Two-point level {a, b} at distance d with the exact power map
// a -> 0, b -> d^{p/q} in lq^1. Image distances are exact because the
// difference has a single non-zero coordinate.
inline ReductionLevel power_level(double d, double pq) {
  std::vector<std::string> labels = {"a", "b"};
  std::vector<double> mat = {0.0, d, d, 0.0};
  Embedding map;
  map.q = 0.0;  // caller fixes q
  map.dim = 1;
  map.coords = {{0.0}, {std::pow(d, pq)}};
  return {FiniteMetricSpace(labels, mat, false), std::move(map)};
}

struct PowerInstanceOptions {
  double p = 2.0, q = 2.0;
  double C = 1.0;
  std::size_t levels = 8;
  bool with_eps = false;  // populate I1 via positive eps/eta
};

// Exact-power instance: delta_q = d^{p/q} levelwise with A = 1, D = C^{p/q}.
// Distances are drawn with margins from the eps and C boundaries so the
// clause checks never sit on a rounding knife edge.
inline ReductionInstance power_instance(const PowerInstanceOptions& opt,
                                        RandomSource& rng) {
  const double pq = opt.p / opt.q;
  std::vector<ReductionLevel> levels;
  std::vector<double> eps, eta;
  for (std::size_t n = 0; n < opt.levels; ++n) {
    const double e = opt.with_eps ? rng.uniform(0.02, 0.2) * opt.C : 0.0;
    double d;
    switch (rng.below(3)) {
      case 0:  // I1 when eps > 0, deep inside
        d = opt.with_eps ? rng.uniform(0.1, 0.9) * e
                         : rng.uniform(1e-4, 0.9) * opt.C;
        break;
      case 1:  // I3
        d = rng.uniform(std::max(1.1 * e, 0.25 * opt.C), 0.95 * opt.C);
        break;
      default:  // I2
        d = rng.uniform(1.0, 3.0) * opt.C;
    }
    auto lv = power_level(d, pq);
    lv.map.q = opt.q;
    levels.push_back(std::move(lv));
    eps.push_back(e);
    eta.push_back(e > 0.0 ? std::pow(e, pq) : 0.0);
  }
  return ReductionInstance(std::move(levels), std::move(eps), std::move(eta),
                           opt.p, opt.q, 1.0, opt.C,
                           std::pow(opt.C, pq));
}

// Level list realizing a given distance sequence exactly (one 2-point space
// per level, exact power map); used by the simulator tests.
inline ReductionInstance sequence_instance(const std::vector<double>& dist,
                                           double p, double q, double C) {
  const double pq = p / q;
  std::vector<ReductionLevel> levels;
  for (double d : dist) {
    auto lv = power_level(d > 0.0 ? d : 1.0, pq);  // d=0 realized by equal picks
    lv.map.q = q;
    levels.push_back(std::move(lv));
  }
  std::vector<double> zeros(dist.size(), 0.0);
  return ReductionInstance(std::move(levels), zeros, zeros, p, q, 1.0, C,
                           std::pow(C, pq));
}

}  // namespace finmet::testgen
