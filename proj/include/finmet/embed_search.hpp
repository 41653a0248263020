#pragma once

#include <cstdint>
#include <optional>

#include "finmet/embedding.hpp"
#include "finmet/metric_space.hpp"

namespace finmet {

struct SearchOptions {
  double alpha = 1.0;
  double q = 2.0;
  std::size_t dim = 1;
  std::optional<double> C;  // far/near split; absent = all pairs are near
  std::size_t restarts = 8;
  std::uint64_t seed = 0;
  std::size_t iterations = 600;
};

struct SearchResult {
  Embedding embedding;
  DistortionCertificate certificate;
  double objective = 0.0;  // max |log image - alpha log d| over near pairs
                           // (plus the far-pair hinge when C is set)
  std::size_t best_restart = 0;
  bool degenerate = false;
};

// Multi-restart first-order descent (Adam on a temperature-annealed softmax
// of the pairwise log-ratio deviations). Deterministic for a fixed seed;
// ties between restarts resolve to the lower restart index. Requires
// positive source distances.
SearchResult embed_search(const FiniteMetricSpace& m, const SearchOptions& opt);

// Exhaustive coordinate grid search for tiny instances (<= 3 points,
// dim <= 2), one point pinned at the origin; for q = 2 the second point sits
// on the positive first axis and the third has non-negative last coordinate
// (rigid-motion quotient), otherwise the second point is confined to the
// non-negative orthant (reflection quotient). Returns the grid minimum of
// the same objective, an upper bound on the true optimum tight to the grid
// resolution.
struct OracleResult {
  double A_star = 1.0;
  Embedding embedding;
  std::uint64_t evaluated = 0;
};
OracleResult oracle_embed(const FiniteMetricSpace& m, double alpha, double q,
                          std::size_t dim, double grid_step);

}  // namespace finmet
