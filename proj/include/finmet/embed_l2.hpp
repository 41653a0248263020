#pragma once

#include <optional>

#include "finmet/embedding.hpp"
#include "finmet/metric_space.hpp"

namespace finmet {

struct L2EmbedResult {
  bool ok = false;
  std::optional<Embedding> embedding;  // q = 2, dim = rank of the centered form
  double min_eigenvalue = 0.0;         // witness when not embeddable
};

// Exact l2 route: double-center the squared-distance matrix and factor it.
// Succeeds iff the centered form is positive semidefinite (up to a relative
// eigenvalue tolerance pinned in the implementation); otherwise reports the
// most negative eigenvalue. Requires a clean metric.
L2EmbedResult embed_l2_exact(const FiniteMetricSpace& m);

}  // namespace finmet
