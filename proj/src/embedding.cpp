#include "finmet/embedding.hpp"

#include <cmath>
#include <stdexcept>

#include "finmet/norms.hpp"

namespace finmet {
namespace {

void require_match(const FiniteMetricSpace& m, const Embedding& t) {
  if (t.coords.size() != m.size())
    throw std::invalid_argument("embedding: coordinate count != point count");
  for (const auto& c : t.coords)
    if (c.size() != t.dim)
      throw std::invalid_argument("embedding: inconsistent coordinate arity");
}

}  // namespace

double Embedding::image_distance(std::size_t u, std::size_t v) const {
  return lq_distance(coords[u], coords[v], q);
}

DistortionCertificate holder_distortion(const FiniteMetricSpace& m,
                                        const Embedding& t, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("distortion: alpha must be > 0");
  if (m.size() < 2)
    throw std::invalid_argument("distortion: need at least 2 points");
  require_match(m, t);

  DistortionCertificate cert;
  cert.alpha = alpha;
  cert.A = 1.0;
  double worst_up = 0.0, worst_down = 0.0;
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = u + 1; v < m.size(); ++v) {
      const double d = m.d(u, v);
      if (!(d > 0.0))
        throw std::invalid_argument(
            "distortion: zero source distance; quotient first");
      const double img = t.image_distance(u, v);
      const double da = std::pow(d, alpha);
      const PairRef pr{u, v, d, img};
      if (img == 0.0) {
        cert.degenerate = true;
        cert.worst_lower = pr;
        cert.A = std::numeric_limits<double>::infinity();
        continue;
      }
      const double up = img / da;
      const double down = da / img;
      if (up > worst_up) {
        worst_up = up;
        cert.worst_upper = pr;
      }
      if (down > worst_down) {
        worst_down = down;
        cert.worst_lower = pr;
      }
    }
  }
  if (!cert.degenerate) cert.A = std::max({1.0, worst_up, worst_down});
  return cert;
}

DistortionCertificate cfh_verify(const FiniteMetricSpace& m,
                                 const Embedding& t, double alpha, double C,
                                 double A, double D) {
  if (!(alpha > 0.0) || !(C > 0.0) || !(A > 0.0) || !(D > 0.0))
    throw std::invalid_argument("cfh_verify: alpha, C, A, D must be > 0");
  require_match(m, t);

  DistortionCertificate cert;
  cert.alpha = alpha;
  cert.A = A;
  cert.C = C;
  cert.D = D;
  double worst_up = 0.0, worst_down = 0.0;
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = u + 1; v < m.size(); ++v) {
      const double d = m.d(u, v);
      const double img = t.image_distance(u, v);
      const PairRef pr{u, v, d, img};
      if (d >= C) {
        if (!(img >= D)) cert.clause1_violations.push_back(pr);
        continue;
      }
      // d < C: the sandwich; d == 0 forces img == 0
      const double da = std::pow(d, alpha);
      if (!(img >= da / A && img <= A * da)) {
        cert.clause2_violations.push_back(pr);
        continue;
      }
      if (img > 0.0 && da > 0.0) {
        const double up = img / da;
        const double down = da / img;
        if (up > worst_up) {
          worst_up = up;
          cert.worst_upper = pr;
        }
        if (down > worst_down) {
          worst_down = down;
          cert.worst_lower = pr;
        }
      }
    }
  }
  return cert;
}

}  // namespace finmet
