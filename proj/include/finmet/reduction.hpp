#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "finmet/embedding.hpp"
#include "finmet/metric_space.hpp"
#include "finmet/net.hpp"
#include "finmet/snap_maps.hpp"

namespace finmet {

// Finite truncation of the reduction data: per-level spaces with block maps
// into lq^{m_n}, the eps/eta sequences and the constants A, C, D. Clause
// violations found at construction are kept as data, not errors.
class ReductionInstance {
 public:
  ReductionInstance(std::vector<ReductionLevel> levels, std::vector<double> eps,
                    std::vector<double> eta, double p, double q, double A,
                    double C, double D);

  const std::vector<ReductionLevel>& levels() const { return levels_; }
  const std::vector<double>& eps() const { return eps_; }
  const std::vector<double>& eta() const { return eta_; }
  double p() const { return p_; }
  double q() const { return q_; }
  double A() const { return A_; }
  double C() const { return C_; }
  double D() const { return D_; }

  double sum_eps_p() const { return sum_eps_p_; }
  double sum_eta_q() const { return sum_eta_q_; }

  // clauses (2)-(4) checked on every pair of every level at construction
  const std::vector<ClauseViolation>& clause_violations() const {
    return clause_violations_;
  }

  // per-level source and image distances for a choice pair
  double level_d(std::size_t lv, std::size_t xu, std::size_t yv) const;
  double level_image_d(std::size_t lv, std::size_t xu, std::size_t yv) const;

 private:
  std::vector<ReductionLevel> levels_;
  std::vector<double> eps_, eta_;
  double p_, q_, A_, C_, D_;
  double sum_eps_p_ = 0.0, sum_eta_q_ = 0.0;
  std::vector<ClauseViolation> clause_violations_;
};

// Sparse flat coordinate sequence theta(x): occupied index pair(n,m) holds
// coordinate m of the level-n image of x(n). Entries are sorted by index.
struct ThetaSequence {
  std::vector<std::pair<std::uint64_t, double>> entries;
};

ThetaSequence build_theta(const ReductionInstance& inst,
                          const std::vector<std::size_t>& x);

// sum over flat indices of |theta_x(k) - theta_y(k)|^q (absent entries are 0)
double theta_gap_power_sum(const ThetaSequence& tx, const ThetaSequence& ty,
                           double q);

struct IndexPartition {
  std::vector<std::size_t> I1;  // d < eps_n
  std::vector<std::size_t> I2;  // d >= C
  std::vector<std::size_t> I3;  // eps_n <= d < C
  // per-part power sums, filled when exponents are known
  double sum_d_p[3] = {0.0, 0.0, 0.0};
  double sum_delta_q[3] = {0.0, 0.0, 0.0};
};

// Exact predicate membership, priority I1, I2, I3 (identical to the defining
// sets whenever eps_n <= C). Lengths of dvals and eps must agree.
IndexPartition partition_indices(std::span<const double> dvals,
                                 std::span<const double> eps, double C);

// membership plus per-part sums of d^p (and delta^q when provided)
IndexPartition partition_with_sums(std::span<const double> dvals,
                                   std::span<const double> eps, double C,
                                   double p,
                                   std::span<const double> deltas = {},
                                   double q = 1.0);

struct InequalityCheck {
  std::string name;
  double lhs = 0.0, rhs = 0.0;
  bool pass = true;
  double slack = 0.0;  // rhs - lhs, raw
};

struct BoundReport {
  IndexPartition partition;
  std::vector<InequalityCheck> inequalities;  // the six proof displays
  bool all_pass() const {
    for (const auto& c : inequalities)
      if (!c.pass) return false;
    return true;
  }
};

// Evaluate the six proof inequalities for a choice pair (x, y): the I1
// eps/eta dominations, the I2 C^p / D^q floors, and the two-sided A^{+-q}
// sandwich on I3. Comparisons carry a 1e-12 relative rounding guard so that
// exact-equality instances (A = 1 power maps) are not failed on ulp noise;
// slack is reported raw.
BoundReport verify_reduction_bounds(const ReductionInstance& inst,
                                    const std::vector<std::size_t>& x,
                                    const std::vector<std::size_t>& y);

struct DenseSnapResult {
  bool ok = false;
  std::vector<std::size_t> snapped;        // net member point per level
  std::vector<double> displacement;        // d_n(x(n), snapped(n))
  std::optional<std::size_t> uncovered_level;
  double displacement_power_sum = 0.0;     // sum displacement^p
  double bound = 0.0;                      // sum over levels of 2^{-np}
};

// Snap per-level choices through nets of radius 2^{-n}; the level-n
// displacement is strictly below 2^{-n} whenever the net covers its space.
DenseSnapResult dense_snap(const std::vector<FiniteMetricSpace>& spaces,
                           const std::vector<Net>& nets,
                           const std::vector<std::size_t>& x, double p);

}  // namespace finmet
