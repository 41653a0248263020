#include "finmet/chain.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>

namespace finmet {
namespace {

constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

// BFS distances (in hops) from src on the threshold graph {d < eps};
// neighbors scanned in index order for determinism.
std::vector<std::size_t> bfs_hops(const FiniteMetricSpace& m, double eps,
                                  std::size_t src,
                                  std::vector<std::size_t>* parent = nullptr) {
  const std::size_t n = m.size();
  std::vector<std::size_t> dist(n, kUnset);
  if (parent) parent->assign(n, kUnset);
  std::queue<std::size_t> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    const std::size_t a = q.front();
    q.pop();
    for (std::size_t b = 0; b < n; ++b) {
      if (b == a || dist[b] != kUnset) continue;
      if (m.d(a, b) < eps) {
        dist[b] = dist[a] + 1;
        if (parent) (*parent)[b] = a;
        q.push(b);
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<Chain> chain_witness(const FiniteMetricSpace& m, double eps,
                                   std::size_t u, std::size_t v) {
  if (!(eps > 0.0)) throw std::invalid_argument("chain: eps must be > 0");
  if (u >= m.size() || v >= m.size())
    throw std::invalid_argument("chain: point index out of range");

  Chain chain;
  chain.eps = eps;
  if (u == v) {
    chain.points = {u};
    return chain;
  }
  std::vector<std::size_t> parent;
  const auto dist = bfs_hops(m, eps, u, &parent);
  if (dist[v] == kUnset) return std::nullopt;

  std::vector<std::size_t> rev;
  for (std::size_t cur = v; cur != kUnset; cur = parent[cur]) rev.push_back(cur);
  chain.points.assign(rev.rbegin(), rev.rend());
  return chain;
}

ChainNumberResult chain_number(const FiniteMetricSpace& m, double eps,
                               double C) {
  if (!(eps > 0.0) || !(C > 0.0))
    throw std::invalid_argument("chain_number: eps and C must be > 0");
  ChainNumberResult res;
  res.linked = true;
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto dist = bfs_hops(m, eps, i);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!(m.d(i, j) < C)) continue;
      if (dist[j] == kUnset) {
        res.linked = false;
        res.witness = {{i, j}};
        res.N = 0;
        return res;
      }
      res.N = std::max(res.N, dist[j]);
    }
  }
  return res;
}

BuildZResult build_Z(const FiniteMetricSpace& m,
                     const std::vector<std::vector<std::size_t>>& F,
                     double C) {
  if (!(C > 0.0)) throw std::invalid_argument("build_Z: C must be > 0");
  for (const auto& level : F)
    for (std::size_t u : level)
      if (u >= m.size())
        throw std::invalid_argument("build_Z: point index out of range");
  for (std::size_t l = 1; l < F.size(); ++l) {
    const std::set<std::size_t> prev(F[l - 1].begin(), F[l - 1].end());
    const std::set<std::size_t> cur(F[l].begin(), F[l].end());
    if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
      throw std::invalid_argument("build_Z: F sets are not nested");
  }

  BuildZResult res;
  for (std::size_t n = 0; n < F.size(); ++n) {
    std::set<std::size_t> zn;
    for (std::size_t ui = 0; ui < F[n].size(); ++ui) {
      for (std::size_t vi = ui; vi < F[n].size(); ++vi) {
        const std::size_t u = F[n][ui], v = F[n][vi];
        if (!(m.d(u, v) < C)) continue;
        for (std::size_t l = 0; l <= n; ++l) {
          const double eps = std::ldexp(1.0, -static_cast<int>(l));
          const auto chain = chain_witness(m, eps, u, v);
          if (!chain) {
            res.missing = {u, v, l, eps};
            return res;
          }
          zn.insert(chain->points.begin(), chain->points.end());
        }
      }
    }
    res.Z.emplace_back(zn.begin(), zn.end());
  }
  res.ok = true;
  return res;
}

}  // namespace finmet
