#include "finmet/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "finmet/kernels.hpp"

namespace finmet {

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<double> d, bool is_pseudo)
    : n_(labels.size()),
      labels_(std::move(labels)),
      d_(std::move(d)),
      pseudo_(is_pseudo) {
  if (d_.size() != n_ * n_)
    throw std::invalid_argument("metric: matrix size does not match labels");
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second)
      throw std::invalid_argument("metric: duplicate label '" + l + "'");
  }
  for (double v : d_) {
    if (!std::isfinite(v))
      throw std::invalid_argument("metric: non-finite distance entry");
  }
}

FiniteMetricSpace FiniteMetricSpace::from_rows(
    std::vector<std::string> labels, const std::vector<std::vector<double>>& rows,
    bool is_pseudo) {
  const std::size_t n = labels.size();
  if (rows.size() != n)
    throw std::invalid_argument("metric: row count does not match labels");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("metric: matrix not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return FiniteMetricSpace(std::move(labels), std::move(flat), is_pseudo);
}

FiniteMetricSpace FiniteMetricSpace::line(std::span<const double> positions) {
  const std::size_t n = positions.size();
  std::vector<std::string> labels(n);
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", positions[i]);
    labels[i] = buf;
    for (std::size_t j = 0; j < n; ++j)
      d[i * n + j] = std::fabs(positions[i] - positions[j]);
  }
  return FiniteMetricSpace(std::move(labels), std::move(d), false);
}

double FiniteMetricSpace::diameter() const {
  double m = 0.0;
  for (double v : d_) m = std::max(m, v);
  return m;
}

double FiniteMetricSpace::min_positive_distance() const {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (d(i, j) > 0.0) m = std::min(m, d(i, j));
  return m;
}

std::size_t FiniteMetricSpace::index_of(const std::string& label) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (labels_[i] == label) return i;
  throw std::invalid_argument("metric: unknown label '" + label + "'");
}

MetricReport validate_metric(const FiniteMetricSpace& m) {
  const std::size_t n = m.size();
  MetricReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    if (m.d(i, i) != 0.0) rep.diagonal_zero = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (m.d(i, j) < 0.0) rep.nonneg = false;
      if (j > i) {
        if (m.d(i, j) != m.d(j, i)) rep.symmetric = false;
        if (m.d(i, j) == 0.0) rep.zero_pairs.push_back({i, j});
      }
    }
  }
  // d(i,k) <= d(i,j) + d(j,k); for each (i,j) the k-scan is contiguous.
  // On symmetric matrices (i,j,k) and (k,j,i) are the same inequality, so
  // k > i reports each violation once; asymmetric matrices get the full scan.
  const auto& kern = kernels::active();
  std::vector<std::uint32_t> hits(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const std::size_t cnt = kern.triangle_scan(
          m.row(i).data(), m.row(j).data(), m.d(i, j), n, hits.data());
      for (std::size_t h = 0; h < cnt; ++h) {
        const std::size_t k = hits[h];
        if (k == j || k == i) continue;
        if (rep.symmetric && k < i) continue;
        rep.triangle_violations.push_back({i, j, k});
      }
    }
  }
  return rep;
}

FiniteMetricSpace quotient_pseudometric(const FiniteMetricSpace& m) {
  const MetricReport rep = validate_metric(m);
  if (!(rep.symmetric && rep.nonneg && rep.diagonal_zero &&
        rep.triangle_violations.empty()))
    throw std::invalid_argument(
        "quotient: input must validate cleanly apart from zero pairs");

  const std::size_t n = m.size();
  // union-find over zero pairs, representative = lowest index
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [i, j] : rep.zero_pairs) {
    std::size_t a = find(i), b = find(j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }

  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < n; ++i)
    if (find(i) == i) reps.push_back(i);

  std::vector<std::string> labels;
  labels.reserve(reps.size());
  std::vector<double> d(reps.size() * reps.size());
  for (std::size_t a = 0; a < reps.size(); ++a) {
    labels.push_back(m.label(reps[a]));
    for (std::size_t b = 0; b < reps.size(); ++b)
      d[a * reps.size() + b] = m.d(reps[a], reps[b]);
  }
  return FiniteMetricSpace(std::move(labels), std::move(d), false);
}

FiniteMetricSpace snowflake(const FiniteMetricSpace& m, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("snowflake: alpha must lie in (0, 1]");
  if (!validate_metric(m).clean_for(m.is_pseudo()))
    throw std::invalid_argument("snowflake: input is not a valid metric");
  if (alpha == 1.0) return m;

  const std::size_t n = m.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) d[i * n + j] = std::pow(m.d(i, j), alpha);
  return FiniteMetricSpace(m.labels(), std::move(d), m.is_pseudo());
}

FiniteMetricSpace shortest_path_repair(const FiniteMetricSpace& m) {
  const std::size_t n = m.size();
  std::vector<double> d(m.flat().begin(), m.flat().end());
  for (std::size_t i = 0; i < n; ++i) d[i * n + i] = 0.0;
  const auto& kern = kernels::active();
  // iterate to a fixpoint: a pass that changes nothing certifies
  // d[i][k] <= d[i][j] + d[j][k] exactly as stored, which is what the
  // exact-comparison triangle check later demands
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<double> before = d;
    for (std::size_t k = 0; k < n; ++k) {
      const double* row_k = d.data() + k * n;
      for (std::size_t i = 0; i < n; ++i) {
        if (i == k) continue;
        kern.min_plus_relax(d.data() + i * n, row_k, d[i * n + k], n);
      }
    }
    changed = before != d;
  }
  return FiniteMetricSpace(m.labels(), std::move(d), m.is_pseudo());
}

}  // namespace finmet
