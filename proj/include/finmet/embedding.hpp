#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "finmet/metric_space.hpp"

namespace finmet {

// Map from a space's points into lq^dim, point index -> coordinate vector.
struct Embedding {
  double q = 2.0;
  std::size_t dim = 0;
  std::vector<std::vector<double>> coords;  // one vector per point

  std::size_t size() const { return coords.size(); }
  double image_distance(std::size_t u, std::size_t v) const;
};

struct PairRef {
  std::size_t u = 0, v = 0;
  double d = 0.0;       // source distance
  double image = 0.0;   // image distance
};

struct DistortionCertificate {
  double alpha = 1.0;
  double A = 1.0;  // multiplicative Hölder constant over checked pairs
  std::optional<double> C;
  std::optional<double> D;
  std::optional<PairRef> worst_upper;  // maximizes image / d^alpha
  std::optional<PairRef> worst_lower;  // maximizes d^alpha / image
  std::vector<PairRef> clause1_violations;  // d >= C but image < D
  std::vector<PairRef> clause2_violations;  // d < C outside the A-sandwich
  bool degenerate = false;  // some distinct pair collapsed to image distance 0

  bool pass() const {
    return !degenerate && clause1_violations.empty() &&
           clause2_violations.empty();
  }
};

// Least A with A^{-1} d^alpha <= image <= A d^alpha over all distinct pairs.
// Requires >= 2 points and positive source distances (quotient first).
// A collapsed pair (image distance exactly 0) makes the certificate
// degenerate with A = +inf.
DistortionCertificate holder_distortion(const FiniteMetricSpace& m,
                                        const Embedding& t, double alpha);

// Check the two-clause certificate with given constants: pairs with
// d >= C must keep image >= D; pairs with d < C must satisfy the A-sandwich
// at exponent alpha. Violations are data, not errors.
DistortionCertificate cfh_verify(const FiniteMetricSpace& m,
                                 const Embedding& t, double alpha, double C,
                                 double A, double D);

}  // namespace finmet
