#include "finmet/embed_l2.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace finmet {

L2EmbedResult embed_l2_exact(const FiniteMetricSpace& m) {
  if (!validate_metric(m).clean_for(false))
    throw std::invalid_argument("embed_l2: input is not a valid metric");

  const auto n = static_cast<Eigen::Index>(m.size());
  L2EmbedResult res;
  if (n == 1) {
    res.ok = true;
    res.embedding = Embedding{2.0, 0, {std::vector<double>{}}};
    return res;
  }

  Eigen::MatrixXd sq(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double d = m.d(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      sq(i, j) = d * d;
    }
  const Eigen::MatrixXd J =
      Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n);
  const Eigen::MatrixXd B = -0.5 * J * sq * J;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(B);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("embed_l2: eigensolver failed");
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  const double lmax = std::max(ev(n - 1), 0.0);
  const double neg_tol = 1e-9 * std::max(lmax, 1.0);

  if (ev(0) < -neg_tol) {
    res.ok = false;
    res.min_eigenvalue = ev(0);
    return res;
  }

  const double rank_tol = 1e-12 * std::max(lmax, 1.0);
  std::vector<Eigen::Index> kept;  // descending eigenvalue order
  for (Eigen::Index i = n - 1; i >= 0; --i)
    if (ev(i) > rank_tol) kept.push_back(i);

  Embedding emb;
  emb.q = 2.0;
  emb.dim = kept.size();
  emb.coords.assign(static_cast<std::size_t>(n),
                    std::vector<double>(kept.size(), 0.0));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const double scale = std::sqrt(ev(kept[c]));
    for (Eigen::Index i = 0; i < n; ++i)
      emb.coords[static_cast<std::size_t>(i)][c] =
          scale * es.eigenvectors()(i, kept[c]);
  }
  res.ok = true;
  res.min_eigenvalue = ev(0);
  res.embedding = std::move(emb);
  return res;
}

}  // namespace finmet
