#include "finmet/embed_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "finmet/norms.hpp"
#include "finmet/random.hpp"

namespace finmet {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct PairTerm {
  std::size_t u, v;
  double d;
  double log_target;  // alpha * log d (near) or alpha * log C (far floor)
  bool far;
};

std::vector<PairTerm> make_terms(const FiniteMetricSpace& m, double alpha,
                                 const std::optional<double>& C) {
  std::vector<PairTerm> terms;
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = u + 1; v < m.size(); ++v) {
      const double d = m.d(u, v);
      if (!(d > 0.0))
        throw std::invalid_argument(
            "embed_search: zero source distance; quotient first");
      const bool far = C && d >= *C;
      terms.push_back(
          {u, v, d, alpha * std::log(far ? *C : d), far});
    }
  }
  return terms;
}

double term_value(const PairTerm& t, double img) {
  if (img <= 0.0) return kInf;
  const double s = std::log(img) - t.log_target;
  return t.far ? std::max(0.0, -s) : std::fabs(s);
}

double true_objective(const std::vector<PairTerm>& terms,
                      const std::vector<std::vector<double>>& coords, double q,
                      bool* degenerate) {
  double worst = 0.0;
  if (degenerate) *degenerate = false;
  for (const auto& t : terms) {
    const double img = lq_distance(coords[t.u], coords[t.v], q);
    const double e = term_value(t, img);
    if (e == kInf && degenerate) *degenerate = true;
    worst = std::max(worst, e);
  }
  return worst;
}

// d image / d coords[u][i] for the lq distance; antisymmetric in u/v
double dimg_dcoord(double delta, double img, double q) {
  if (img <= 0.0) return 0.0;
  if (q == 2.0) return delta / img;
  if (q == 1.0) return delta > 0.0 ? 1.0 : (delta < 0.0 ? -1.0 : 0.0);
  const double a = std::fabs(delta);
  if (a == 0.0) return 0.0;
  return std::pow(img, 1.0 - q) * std::pow(a, q - 1.0) *
         (delta > 0.0 ? 1.0 : -1.0);
}

DistortionCertificate make_certificate(const FiniteMetricSpace& m,
                                       const Embedding& emb, double alpha,
                                       const std::optional<double>& C) {
  if (!C) return holder_distortion(m, emb, alpha);

  DistortionCertificate cert;
  cert.alpha = alpha;
  cert.C = *C;
  double worst_up = 0.0, worst_down = 0.0;
  double min_far_img = kInf;
  bool have_far = false;
  for (std::size_t u = 0; u < m.size(); ++u) {
    for (std::size_t v = u + 1; v < m.size(); ++v) {
      const double d = m.d(u, v);
      const double img = emb.image_distance(u, v);
      const PairRef pr{u, v, d, img};
      if (d >= *C) {
        have_far = true;
        if (img < min_far_img) min_far_img = img;
        if (img == 0.0) {
          cert.degenerate = true;
          cert.clause1_violations.push_back(pr);
        }
        continue;
      }
      if (img == 0.0) {
        cert.degenerate = true;
        cert.worst_lower = pr;
        continue;
      }
      const double da = std::pow(d, alpha);
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
  cert.A = cert.degenerate ? kInf : std::max({1.0, worst_up, worst_down});
  if (have_far) cert.D = cert.degenerate ? 0.0 : min_far_img;
  return cert;
}

}  // namespace

SearchResult embed_search(const FiniteMetricSpace& m,
                          const SearchOptions& opt) {
  if (opt.dim < 1) throw std::invalid_argument("embed_search: dim must be >= 1");
  if (!(opt.alpha > 0.0))
    throw std::invalid_argument("embed_search: alpha must be > 0");
  if (!(opt.q >= 1.0)) throw std::invalid_argument("embed_search: q must be >= 1");
  if (opt.restarts < 1)
    throw std::invalid_argument("embed_search: restarts must be >= 1");
  if (opt.C && !(*opt.C > 0.0))
    throw std::invalid_argument("embed_search: C must be > 0");
  const std::size_t n = m.size();
  if (n == 0) throw std::invalid_argument("embed_search: empty space");

  SearchResult res;
  res.embedding.q = opt.q;
  res.embedding.dim = opt.dim;

  if (n == 1) {
    res.embedding.coords.assign(1, std::vector<double>(opt.dim, 0.0));
    res.certificate.alpha = opt.alpha;
    res.certificate.A = 1.0;
    if (opt.C) res.certificate.C = *opt.C;
    return res;
  }

  if (n == 2) {
    // one pair: place at +-d^alpha/2 on the first axis, exact optimum
    const double half = std::pow(m.d(0, 1), opt.alpha) / 2.0;
    res.embedding.coords.assign(2, std::vector<double>(opt.dim, 0.0));
    res.embedding.coords[0][0] = -half;
    res.embedding.coords[1][0] = half;
    res.certificate = make_certificate(m, res.embedding, opt.alpha, opt.C);
    res.objective = 0.0;
    return res;
  }

  const auto terms = make_terms(m, opt.alpha, opt.C);
  double scale = 0.0;
  for (const auto& t : terms) scale = std::max(scale, std::pow(t.d, opt.alpha));

  std::vector<std::vector<double>> best_coords;
  double best_obj = kInf;
  std::size_t best_restart = 0;

  const std::size_t iters = std::max<std::size_t>(opt.iterations, 10);
  const double t0 = 0.5, t1 = 0.005;
  const double lr0 = 0.15 * scale, lr1 = 0.001 * scale;

  for (std::size_t r = 0; r < opt.restarts; ++r) {
    RandomSource rng = RandomSource::for_stream(opt.seed, r);

    std::vector<std::vector<double>> x(n, std::vector<double>(opt.dim));
    for (auto& p : x) {
      double norm_sq = 0.0;
      for (auto& c : p) {
        c = rng.normal();
        norm_sq += c * c;
      }
      const double norm = std::sqrt(norm_sq);
      const double radius =
          scale * std::pow(rng.uniform01(), 1.0 / static_cast<double>(opt.dim));
      if (norm > 0.0)
        for (auto& c : p) c *= radius / norm;
    }

    std::vector<std::vector<double>> adam_m(n, std::vector<double>(opt.dim, 0.0));
    std::vector<std::vector<double>> adam_v(n, std::vector<double>(opt.dim, 0.0));
    std::vector<std::vector<double>> grad(n, std::vector<double>(opt.dim));

    std::vector<std::vector<double>> restart_best = x;
    double restart_obj = kInf;

    for (std::size_t it = 0; it < iters; ++it) {
      const double frac =
          iters > 1 ? static_cast<double>(it) / static_cast<double>(iters - 1)
                    : 0.0;
      const double temp = t0 * std::pow(t1 / t0, frac);
      const double lr = lr0 * std::pow(lr1 / lr0, frac);

      // pull coincident images apart before evaluating
      for (const auto& t : terms) {
        const double img = lq_distance(x[t.u], x[t.v], opt.q);
        if (img < 1e-12 * scale) {
          for (std::size_t c = 0; c < opt.dim; ++c)
            x[t.v][c] += 0.01 * scale * (rng.uniform01() - 0.5);
        }
      }

      // softmax weights over term values
      std::vector<double> vals(terms.size()), imgs(terms.size());
      double vmax = -kInf;
      for (std::size_t k = 0; k < terms.size(); ++k) {
        imgs[k] = lq_distance(x[terms[k].u], x[terms[k].v], opt.q);
        vals[k] = term_value(terms[k], imgs[k]);
        vmax = std::max(vmax, vals[k]);
      }
      if (vmax < kInf) {
        if (vmax < restart_obj) {
          restart_obj = vmax;
          restart_best = x;
        }
        double wsum = 0.0;
        std::vector<double> w(terms.size());
        for (std::size_t k = 0; k < terms.size(); ++k) {
          w[k] = std::exp((vals[k] - vmax) / temp);
          wsum += w[k];
        }
        for (auto& row : grad) std::fill(row.begin(), row.end(), 0.0);
        for (std::size_t k = 0; k < terms.size(); ++k) {
          const auto& t = terms[k];
          const double img = imgs[k];
          if (img <= 0.0) continue;
          const double s = std::log(img) - t.log_target;
          double dfds;  // d term / d log img
          if (t.far)
            dfds = s < 0.0 ? -1.0 : 0.0;
          else
            dfds = s > 0.0 ? 1.0 : (s < 0.0 ? -1.0 : 0.0);
          const double wk = (w[k] / wsum) * dfds / img;
          if (wk == 0.0) continue;
          for (std::size_t c = 0; c < opt.dim; ++c) {
            const double g =
                wk * dimg_dcoord(x[t.u][c] - x[t.v][c], img, opt.q);
            grad[t.u][c] += g;
            grad[t.v][c] -= g;
          }
        }
        const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
        const double bc1 = 1.0 - std::pow(b1, static_cast<double>(it + 1));
        const double bc2 = 1.0 - std::pow(b2, static_cast<double>(it + 1));
        for (std::size_t p = 0; p < n; ++p) {
          for (std::size_t c = 0; c < opt.dim; ++c) {
            adam_m[p][c] = b1 * adam_m[p][c] + (1.0 - b1) * grad[p][c];
            adam_v[p][c] = b2 * adam_v[p][c] + (1.0 - b2) * grad[p][c] * grad[p][c];
            x[p][c] -= lr * (adam_m[p][c] / bc1) /
                       (std::sqrt(adam_v[p][c] / bc2) + eps);
          }
        }
      }
    }

    const double final_obj = true_objective(terms, x, opt.q, nullptr);
    if (final_obj < restart_obj) {
      restart_obj = final_obj;
      restart_best = x;
    }
    if (restart_obj < best_obj) {
      best_obj = restart_obj;
      best_coords = restart_best;
      best_restart = r;
    }
  }

  if (best_coords.empty()) {  // every restart degenerate
    best_coords.assign(n, std::vector<double>(opt.dim, 0.0));
    best_obj = kInf;
  }
  res.embedding.coords = std::move(best_coords);
  res.objective = best_obj;
  res.best_restart = best_restart;
  res.certificate = make_certificate(m, res.embedding, opt.alpha, opt.C);
  res.degenerate = res.certificate.degenerate || !std::isfinite(best_obj);
  return res;
}

namespace {

struct GridEval {
  double best = kInf;  // max pair ratio (not squared)
  std::array<double, 6> coords{};  // p1 (dim), p2 (dim), dim<=2, p0 at origin
  std::uint64_t evaluated = 0;
};

double pair_ratio(double img, double target) {
  if (img <= 0.0) return kInf;
  return std::max(img / target, target / img);
}

}  // namespace

OracleResult oracle_embed(const FiniteMetricSpace& m, double alpha, double q,
                          std::size_t dim, double grid_step) {
  if (m.size() > 3)
    throw std::invalid_argument("oracle_embed: at most 3 points");
  if (dim < 1 || dim > 2)
    throw std::invalid_argument("oracle_embed: dim must be 1 or 2");
  if (!(grid_step > 0.0))
    throw std::invalid_argument("oracle_embed: grid_step must be > 0");
  if (!(alpha > 0.0) || !(q >= 1.0))
    throw std::invalid_argument("oracle_embed: need alpha > 0, q >= 1");

  OracleResult res;
  res.embedding.q = q;
  res.embedding.dim = dim;
  const std::size_t n = m.size();
  res.embedding.coords.assign(n, std::vector<double>(dim, 0.0));
  if (n <= 1) {
    res.A_star = 1.0;
    res.evaluated = 1;
    return res;
  }

  std::vector<double> target;  // d^alpha per pair, order (0,1), (0,2), (1,2)
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const double d = m.d(u, v);
      if (!(d > 0.0))
        throw std::invalid_argument(
            "oracle_embed: zero source distance; quotient first");
      target.push_back(std::pow(d, alpha));
    }

  if (n == 2) {
    // p1 on the first axis at exactly d^alpha
    res.embedding.coords[1][0] = target[0];
    res.A_star = 1.0;
    res.evaluated = 1;
    return res;
  }

  const double da01 = target[0], da02 = target[1], da12 = target[2];
  const double R = 2.1 * std::max({da01, da02, da12});
  const double h = grid_step;
  const auto max_index = [&](double range) {
    return static_cast<long>(std::floor(range / h)) + 1;
  };

  GridEval ge;
  const auto consider = [&](double r01, double t_or_t1, double t2, double x,
                            double y) {
    ++ge.evaluated;
    double worst = r01;
    double i02, i12;
    if (dim == 1) {
      i02 = std::fabs(x);
      i12 = std::fabs(x - t_or_t1);
    } else if (q == 2.0) {
      i02 = std::sqrt(x * x + y * y);
      const double dx = x - t_or_t1;
      i12 = std::sqrt(dx * dx + y * y);
    } else {
      const double a02[2] = {x, y}, b02[2] = {0.0, 0.0};
      const double b12[2] = {t_or_t1, t2};
      i02 = lq_distance({a02, 2}, {b02, 2}, q);
      i12 = lq_distance({a02, 2}, {b12, 2}, q);
    }
    worst = std::max(worst, pair_ratio(i02, da02));
    if (worst >= ge.best) return;
    worst = std::max(worst, pair_ratio(i12, da12));
    if (worst < ge.best) {
      ge.best = worst;
      ge.coords = {t_or_t1, t2, x, y, 0.0, 0.0};
    }
  };

  if (dim == 1) {
    const long tmax = max_index(R), xmax = max_index(R);
    // full pass; 1-D grids are small
    for (long it = 1; it <= tmax; ++it) {
      const double t = static_cast<double>(it) * h;
      const double r01 = pair_ratio(t, da01);
      if (r01 >= ge.best) continue;
      for (long ix = -xmax; ix <= xmax; ++ix)
        consider(r01, t, 0.0, static_cast<double>(ix) * h, 0.0);
    }
  } else if (q == 2.0) {
    // coarse seeding pass on a sub-grid of the fine grid, then an exact
    // pruned pass: every window below is a necessary condition for beating
    // the current best, so the result is the exact fine-grid minimum
    const long stride = std::max(1L, static_cast<long>(R / (48.0 * h)));
    const long tmax = max_index(R), xmax = max_index(R), ymax = max_index(R);
    for (long it = stride; it <= tmax; it += stride) {
      const double t = static_cast<double>(it) * h;
      const double r01 = pair_ratio(t, da01);
      if (r01 >= ge.best) continue;
      for (long ix = -xmax; ix <= xmax; ix += stride)
        for (long iy = 0; iy <= ymax; iy += stride)
          consider(r01, t, 0.0, static_cast<double>(ix) * h,
                   static_cast<double>(iy) * h);
    }
    for (long it = 1; it <= tmax; ++it) {
      const double t = static_cast<double>(it) * h;
      const double r01 = pair_ratio(t, da01);
      if (r01 >= ge.best) continue;
      const double xr = ge.best * da02;
      const long xw = std::min(xmax, static_cast<long>(std::ceil(xr / h)) + 1);
      for (long ix = -xw; ix <= xw; ++ix) {
        const double x = static_cast<double>(ix) * h;
        const double b2 = ge.best * ge.best;
        const double lo02 = da02 * da02 / b2 - x * x;
        const double hi02 = da02 * da02 * b2 - x * x;
        const double dx12 = x - t;
        const double lo12 = da12 * da12 / b2 - dx12 * dx12;
        const double hi12 = da12 * da12 * b2 - dx12 * dx12;
        const double hi = std::min(hi02, hi12);
        if (hi < 0.0) continue;
        const double lo = std::max({lo02, lo12, 0.0});
        if (lo > hi) continue;
        long jlo = static_cast<long>(std::floor(std::sqrt(lo) / h)) - 1;
        long jhi = static_cast<long>(std::ceil(std::sqrt(hi) / h)) + 1;
        jlo = std::max(jlo, 0L);
        jhi = std::min(jhi, ymax);
        for (long iy = jlo; iy <= jhi; ++iy)
          consider(r01, t, 0.0, x, static_cast<double>(iy) * h);
      }
    }
  } else {
    // general q, dim 2: p1 ranges over the non-negative orthant
    const long tmax = max_index(R), xmax = max_index(R);
    const double cap = 2e9;
    const double loops = static_cast<double>(tmax + 1) * (tmax + 1) *
                         (2 * xmax + 1) * (2 * xmax + 1);
    if (loops > cap)
      throw std::invalid_argument(
          "oracle_embed: grid too fine for general q in dim 2");
    for (long it1 = 0; it1 <= tmax; ++it1) {
      for (long it2 = 0; it2 <= tmax; ++it2) {
        const double t1 = static_cast<double>(it1) * h;
        const double t2 = static_cast<double>(it2) * h;
        const double p1[2] = {t1, t2}, origin[2] = {0.0, 0.0};
        const double i01 = lq_distance({p1, 2}, {origin, 2}, q);
        const double r01 = pair_ratio(i01, da01);
        if (r01 >= ge.best) continue;
        for (long ix = -xmax; ix <= xmax; ++ix) {
          const double x = static_cast<double>(ix) * h;
          if (std::fabs(x) > ge.best * da02) continue;
          for (long iy = -xmax; iy <= xmax; ++iy) {
            const double y = static_cast<double>(iy) * h;
            if (std::fabs(y) > ge.best * da02) continue;
            consider(r01, t1, t2, x, y);
          }
        }
      }
    }
  }

  res.A_star = std::max(ge.best, 1.0);
  if (dim == 1) {
    res.embedding.coords[1][0] = ge.coords[0];
    res.embedding.coords[2][0] = ge.coords[2];
  } else {
    res.embedding.coords[1][0] = ge.coords[0];
    res.embedding.coords[1][1] = ge.coords[1];
    res.embedding.coords[2][0] = ge.coords[2];
    res.embedding.coords[2][1] = ge.coords[3];
  }
  res.evaluated = ge.evaluated;
  return res;
}

}  // namespace finmet
