#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

namespace finmet {

// Finite (pseudo-)metric space: labeled points with a dense row-major
// distance matrix. Immutable after construction; construction checks shape
// only (square, label count, unique labels, finite entries) — metric axioms
// are validate_metric's job, so invalid matrices are representable and
// reportable.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::vector<std::string> labels, std::vector<double> d,
                    bool is_pseudo);

  static FiniteMetricSpace from_rows(
      std::vector<std::string> labels,
      const std::vector<std::vector<double>>& rows, bool is_pseudo);

  // points on the real line, d(i,j) = |x_i - x_j|; labels are the values
  static FiniteMetricSpace line(std::span<const double> positions);

  std::size_t size() const { return n_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }
  bool is_pseudo() const { return pseudo_; }

  double d(std::size_t i, std::size_t j) const { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {d_.data() + i * n_, n_};
  }
  std::span<const double> flat() const { return d_; }

  double diameter() const;
  // smallest off-diagonal positive distance; +inf when there is none
  double min_positive_distance() const;

  // index of a label; throws when absent
  std::size_t index_of(const std::string& label) const;

 private:
  std::size_t n_;
  std::vector<std::string> labels_;
  std::vector<double> d_;
  bool pseudo_;
};

struct MetricReport {
  bool symmetric = true;
  bool nonneg = true;
  bool diagonal_zero = true;
  std::vector<std::array<std::size_t, 3>> triangle_violations;  // (i,j,k): d(i,k) > d(i,j)+d(j,k)
  std::vector<std::array<std::size_t, 2>> zero_pairs;           // off-diagonal exact zeros, i<j

  // clean for the declared pseudo-ness: zero pairs only disqualify a
  // space that claims to be a true metric
  bool clean_for(bool is_pseudo) const {
    return symmetric && nonneg && diagonal_zero && triangle_violations.empty() &&
           (is_pseudo || zero_pairs.empty());
  }
};

// Exhaustive pair/triple scan; exact comparisons on stored values.
MetricReport validate_metric(const FiniteMetricSpace& m);

// Collapse exact zero-distance classes (union over zero pairs); the class
// representative is its lowest-index member. Requires the input to validate
// cleanly except for zero pairs.
FiniteMetricSpace quotient_pseudometric(const FiniteMetricSpace& m);

// d -> d^alpha entrywise, alpha in (0,1]. Requires a clean metric.
FiniteMetricSpace snowflake(const FiniteMetricSpace& m, double alpha);

// All-pairs shortest-path completion of a symmetric non-negative matrix
// (Floyd–Warshall); yields a valid (pseudo-)metric on the same labels.
FiniteMetricSpace shortest_path_repair(const FiniteMetricSpace& m);

}  // namespace finmet
