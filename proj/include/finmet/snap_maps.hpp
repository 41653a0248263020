#pragma once

#include <optional>
#include <vector>

#include "finmet/embedding.hpp"
#include "finmet/metric_space.hpp"
#include "finmet/net.hpp"

namespace finmet {

// Pair that escaped the strict (1/2, 2) factor band, with the ratio seen.
struct FactorTwoViolation {
  std::size_t u, v;
  double d;
  double image_d;
};

struct DenseTransferResult {
  bool ok = false;
  std::vector<std::size_t> image;  // pool point per query point, same order
  double threshold = 0.0;          // gamma/4 or (4k)^{-1}
  double gamma = 0.0;              // min positive distance of the query set
  std::optional<std::size_t> failed_at;  // query point with no pool point in range
  std::vector<FactorTwoViolation> violations;  // empty when the map succeeds
  bool factor_two_ok() const { return ok && violations.empty(); }
};

// Nearest pool point strictly within gamma/4 of each query point (ties to the
// lowest pool index); certifies (1/2) d(u,v) < d(Tu,Tv) < 2 d(u,v) on all
// distinct query pairs. Queries and pool are index sets into the ambient
// space. Fails (with the witness) when some query has no pool point in range.
DenseTransferResult transfer_dense(const FiniteMetricSpace& ambient,
                                   const std::vector<std::size_t>& F,
                                   const std::vector<std::size_t>& pool);

// Same map at threshold (4k)^{-1}. k must satisfy: min positive distance of
// F is >= 1/k, and — when C is given — every pair with d < C has
// d <= C - 1/k. An invalid k is a structural error, not a failure outcome.
DenseTransferResult round_to_dense(const FiniteMetricSpace& ambient,
                                   const std::vector<std::size_t>& F,
                                   const std::vector<std::size_t>& pool,
                                   std::size_t k, std::optional<double> C = {});

struct ReductionLevel {
  FiniteMetricSpace space;
  Embedding map;  // into lq^{m_n}
};

struct SnapConstants {
  std::vector<double> eps_prime;  // 3 eps_n
  std::vector<double> eta_prime;  // A (5 eps_n)^{p/q}
  double A_prime = 0.0;           // 3^{p/q} A
  double C_prime = 0.0;           // C - 2 sup eps
  double D_prime = 0.0;           // min(D, A^{-1} (C/5)^{p/q})
  double sum_eps_prime_p = 0.0;
  double sum_eta_prime_q = 0.0;
};

struct ClauseViolation {
  std::size_t level, u, v;
  double d;
  double image_d;
  int clause;  // 2, 3 or 4
};

struct NetSnapResult {
  std::vector<Embedding> snapped;  // level map composed with net assignment
  std::vector<Net> nets;
  SnapConstants constants;
  std::vector<ClauseViolation> violations;  // new-constant check, all pairs
  bool pass() const { return violations.empty(); }
};

// Snap each level map through its eps_n-net and derive the relaxed constant
// tuple; requires 5 sup eps_n < C. Nets with eps_n = 0 are identity nets.
// A verification pass re-checks clauses (2)-(4) with the new constants on
// every pair of every level.
NetSnapResult net_snap(const std::vector<ReductionLevel>& levels,
                       const std::vector<Net>& nets,
                       const std::vector<double>& eps, double p, double q,
                       double A, double C, double D);

}  // namespace finmet
