#include "finmet/net.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace finmet {

Net greedy_net(const FiniteMetricSpace& m, double eps,
               const std::vector<std::size_t>& order) {
  if (!(eps > 0.0)) throw std::invalid_argument("greedy_net: eps must be > 0");
  const std::size_t n = m.size();
  {
    if (order.size() != n)
      throw std::invalid_argument("greedy_net: order size mismatch");
    std::vector<bool> seen(n, false);
    for (std::size_t u : order) {
      if (u >= n || seen[u])
        throw std::invalid_argument("greedy_net: order is not a permutation");
      seen[u] = true;
    }
  }

  Net net;
  net.eps = eps;
  for (std::size_t u : order) {
    bool admit = true;
    for (std::size_t s : net.members) {
      if (m.d(u, s) < eps) {
        admit = false;
        break;
      }
    }
    if (admit) net.members.push_back(u);
  }
  net.assignment.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t mi = 0; mi < net.members.size(); ++mi) {
      if (m.d(u, net.members[mi]) < eps) {
        net.assignment[u] = mi;
        break;
      }
    }
    if (net.assignment[u] == std::numeric_limits<std::size_t>::max())
      throw std::logic_error("greedy_net: covering failed");  // unreachable
  }
  return net;
}

Net greedy_net(const FiniteMetricSpace& m, double eps) {
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), 0);
  return greedy_net(m, eps, order);
}

Net identity_net(const FiniteMetricSpace& m) {
  Net net;
  net.eps = 0.0;
  net.members.resize(m.size());
  std::iota(net.members.begin(), net.members.end(), 0);
  net.assignment = net.members;
  return net;
}

NetCheck check_net(const FiniteMetricSpace& m, const Net& net) {
  NetCheck chk;
  for (std::size_t a = 0; a < net.members.size(); ++a)
    for (std::size_t b = a + 1; b < net.members.size(); ++b)
      if (net.eps > 0.0 && m.d(net.members[a], net.members[b]) < net.eps)
        chk.separation_violations.push_back({net.members[a], net.members[b]});

  for (std::size_t u = 0; u < m.size(); ++u) {
    if (u >= net.assignment.size() ||
        net.assignment[u] >= net.members.size()) {
      chk.covering_violations.push_back(u);
      continue;
    }
    const bool self = net.member_point(u) == u;
    if (!self && !(m.d(u, net.member_point(u)) < net.eps)) {
      chk.covering_violations.push_back(u);
      continue;
    }
    for (std::size_t mi = 0; mi < net.assignment[u]; ++mi) {
      if (m.d(u, net.members[mi]) < net.eps) {
        chk.first_member_violations.push_back(u);
        break;
      }
    }
  }
  return chk;
}

}  // namespace finmet
