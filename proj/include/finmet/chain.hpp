#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "finmet/metric_space.hpp"

namespace finmet {

// eps-chain between two points: consecutive hops are strictly shorter than
// eps, endpoints are the queried pair, steps = points.size() - 1.
struct Chain {
  double eps = 0.0;
  std::vector<std::size_t> points;
  std::size_t steps() const { return points.empty() ? 0 : points.size() - 1; }
};

// Minimal-step chain via BFS on the threshold graph {d < eps}; nullopt when
// u and v lie in different threshold components (a normal outcome).
std::optional<Chain> chain_witness(const FiniteMetricSpace& m, double eps,
                                   std::size_t u, std::size_t v);

struct ChainNumberResult {
  bool linked = false;
  std::size_t N = 0;                        // max minimal steps over pairs d < C
  std::optional<std::array<std::size_t, 2>> witness;  // unreachable pair
};

// N = max over pairs with d(u,v) < C of minimal chain steps at scale eps;
// failure (with witness) when some qualifying pair is unreachable. Certifies
// link(C) for this finite sample only.
ChainNumberResult chain_number(const FiniteMetricSpace& m, double eps,
                               double C);

struct BuildZResult {
  bool ok = false;
  std::vector<std::vector<std::size_t>> Z;  // sorted point indices per level
  struct Missing {
    std::size_t u, v, level;
    double eps;
  };
  std::optional<Missing> missing;
};

// Z_n = chain points over pairs u,v in F_n with d(u,v) < C, at every scale
// 2^{-l} for l <= n. F must be nested (F_0 ⊆ F_1 ⊆ ...); chains are taken in
// the ambient space m.
BuildZResult build_Z(const FiniteMetricSpace& m,
                     const std::vector<std::vector<std::size_t>>& F, double C);

}  // namespace finmet
