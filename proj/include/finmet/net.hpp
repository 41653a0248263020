#pragma once

#include <cstddef>
#include <vector>

#include "finmet/metric_space.hpp"

namespace finmet {

// eps-net over a space: members are pairwise >= eps apart (separation) and
// every point lies strictly within eps of its assigned member (covering).
// assignment[u] indexes into members and is the first member within eps of u
// in member order.
struct Net {
  double eps = 0.0;
  std::vector<std::size_t> members;     // point indices, admission order
  std::vector<std::size_t> assignment;  // point index -> position in members

  std::size_t member_point(std::size_t u) const {
    return members[assignment[u]];
  }
};

struct NetCheck {
  std::vector<std::array<std::size_t, 2>> separation_violations;
  std::vector<std::size_t> covering_violations;
  std::vector<std::size_t> first_member_violations;
  bool ok() const {
    return separation_violations.empty() && covering_violations.empty() &&
           first_member_violations.empty();
  }
};

// Scan points in `order`; admit a point iff it is >= eps from every admitted
// point. Covering holds because a rejected point witnessed a member within
// eps. `order` must be a permutation of 0..n-1; eps must be > 0.
Net greedy_net(const FiniteMetricSpace& m, double eps,
               const std::vector<std::size_t>& order);

// label-order insertion
Net greedy_net(const FiniteMetricSpace& m, double eps);

// every point is its own member; the degenerate eps = 0 case
Net identity_net(const FiniteMetricSpace& m);

NetCheck check_net(const FiniteMetricSpace& m, const Net& net);

}  // namespace finmet
