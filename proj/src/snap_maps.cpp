#include "finmet/snap_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "finmet/norms.hpp"

namespace finmet {
namespace {

void check_subset(const FiniteMetricSpace& ambient,
                  const std::vector<std::size_t>& pts, const char* what) {
  for (std::size_t p : pts)
    if (p >= ambient.size())
      throw std::invalid_argument(std::string(what) + ": index out of range");
}

double min_positive_over(const FiniteMetricSpace& ambient,
                         const std::vector<std::size_t>& F) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < F.size(); ++a)
    for (std::size_t b = a + 1; b < F.size(); ++b) {
      const double d = ambient.d(F[a], F[b]);
      if (!(d > 0.0))
        throw std::invalid_argument(
            "dense transfer: query set has a zero-distance pair");
      g = std::min(g, d);
    }
  return g;
}

DenseTransferResult snap_to_pool(const FiniteMetricSpace& ambient,
                                 const std::vector<std::size_t>& F,
                                 const std::vector<std::size_t>& pool,
                                 double threshold, double gamma) {
  DenseTransferResult res;
  res.threshold = threshold;
  res.gamma = gamma;
  res.image.reserve(F.size());
  for (std::size_t idx = 0; idx < F.size(); ++idx) {
    const std::size_t u = F[idx];
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_p = 0;
    bool found = false;
    for (std::size_t p : pool) {
      const double d = ambient.d(u, p);
      if (d < threshold && d < best) {  // strict threshold, ties keep lowest index
        best = d;
        best_p = p;
        found = true;
      }
    }
    if (!found) {
      res.failed_at = u;
      return res;
    }
    res.image.push_back(best_p);
  }
  res.ok = true;
  for (std::size_t a = 0; a < F.size(); ++a) {
    for (std::size_t b = a + 1; b < F.size(); ++b) {
      const double d = ambient.d(F[a], F[b]);
      const double img = ambient.d(res.image[a], res.image[b]);
      if (!(img > 0.5 * d && img < 2.0 * d))
        res.violations.push_back({F[a], F[b], d, img});
    }
  }
  return res;
}

}  // namespace

DenseTransferResult transfer_dense(const FiniteMetricSpace& ambient,
                                   const std::vector<std::size_t>& F,
                                   const std::vector<std::size_t>& pool) {
  check_subset(ambient, F, "transfer_dense F");
  check_subset(ambient, pool, "transfer_dense pool");
  const double gamma = min_positive_over(ambient, F);
  return snap_to_pool(ambient, F, pool, gamma / 4.0, gamma);
}

DenseTransferResult round_to_dense(const FiniteMetricSpace& ambient,
                                   const std::vector<std::size_t>& F,
                                   const std::vector<std::size_t>& pool,
                                   std::size_t k, std::optional<double> C) {
  check_subset(ambient, F, "round_to_dense F");
  check_subset(ambient, pool, "round_to_dense pool");
  if (k < 1) throw std::invalid_argument("round_to_dense: k must be >= 1");
  const double inv_k = 1.0 / static_cast<double>(k);
  const double gamma = min_positive_over(ambient, F);
  if (gamma < inv_k)
    throw std::invalid_argument(
        "round_to_dense: k violates condition (a): min distance < 1/k");
  if (C) {
    for (std::size_t a = 0; a < F.size(); ++a)
      for (std::size_t b = a + 1; b < F.size(); ++b) {
        const double d = ambient.d(F[a], F[b]);
        if (d < *C && d > *C - inv_k)
          throw std::invalid_argument(
              "round_to_dense: k violates condition (b): pair under C within "
              "1/k of C");
      }
  }
  return snap_to_pool(ambient, F, pool, inv_k / 4.0, gamma);
}

NetSnapResult net_snap(const std::vector<ReductionLevel>& levels,
                       const std::vector<Net>& nets,
                       const std::vector<double>& eps, double p, double q,
                       double A, double C, double D) {
  if (!(p >= 1.0 && q >= 1.0))
    throw std::invalid_argument("net_snap: p, q must be >= 1");
  if (!(A > 0.0 && C > 0.0 && D > 0.0))
    throw std::invalid_argument("net_snap: A, C, D must be > 0");
  if (levels.size() != nets.size() || levels.size() != eps.size())
    throw std::invalid_argument("net_snap: levels/nets/eps size mismatch");
  double sup_eps = 0.0;
  for (double e : eps) {
    if (!(e >= 0.0)) throw std::invalid_argument("net_snap: eps must be >= 0");
    sup_eps = std::max(sup_eps, e);
  }
  if (!(5.0 * sup_eps < C))
    throw std::invalid_argument("net_snap: requires 5 sup eps < C");

  const double pq = p / q;
  NetSnapResult res;
  res.nets = nets;
  res.constants.A_prime = std::pow(3.0, pq) * A;
  res.constants.C_prime = C - 2.0 * sup_eps;
  res.constants.D_prime = std::min(D, std::pow(C / 5.0, pq) / A);
  for (double e : eps) {
    res.constants.eps_prime.push_back(3.0 * e);
    res.constants.eta_prime.push_back(A * std::pow(5.0 * e, pq));
  }
  res.constants.sum_eps_prime_p = power_sum(res.constants.eps_prime, p);
  res.constants.sum_eta_prime_q = power_sum(res.constants.eta_prime, q);

  for (std::size_t lv = 0; lv < levels.size(); ++lv) {
    const auto& space = levels[lv].space;
    const auto& map = levels[lv].map;
    const auto& net = nets[lv];
    if (map.coords.size() != space.size())
      throw std::invalid_argument("net_snap: map does not cover its level");
    if (net.assignment.size() != space.size() ||
        !check_net(space, net).ok())
      throw std::invalid_argument("net_snap: net invariants broken at a level");

    Embedding snapped;
    snapped.q = map.q;
    snapped.dim = map.dim;
    snapped.coords.reserve(space.size());
    for (std::size_t u = 0; u < space.size(); ++u)
      snapped.coords.push_back(map.coords[net.member_point(u)]);

    const double epn = res.constants.eps_prime[lv];
    const double etn = res.constants.eta_prime[lv];
    for (std::size_t u = 0; u < space.size(); ++u) {
      for (std::size_t v = u + 1; v < space.size(); ++v) {
        const double d = space.d(u, v);
        const double img = snapped.image_distance(u, v);
        if (d < epn && !(img < etn))
          res.violations.push_back({lv, u, v, d, img, 2});
        if (d >= res.constants.C_prime && !(img >= res.constants.D_prime))
          res.violations.push_back({lv, u, v, d, img, 3});
        if (d >= epn && d < res.constants.C_prime) {
          const double da = std::pow(d, pq);
          if (!(img >= da / res.constants.A_prime &&
                img <= da * res.constants.A_prime))
            res.violations.push_back({lv, u, v, d, img, 4});
        }
      }
    }
    res.snapped.push_back(std::move(snapped));
  }
  return res;
}

}  // namespace finmet
