#include "finmet/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "finmet/norms.hpp"
#include "finmet/pairing.hpp"

namespace finmet {

ReductionInstance::ReductionInstance(std::vector<ReductionLevel> levels,
                                     std::vector<double> eps,
                                     std::vector<double> eta, double p,
                                     double q, double A, double C, double D)
    : levels_(std::move(levels)),
      eps_(std::move(eps)),
      eta_(std::move(eta)),
      p_(p),
      q_(q),
      A_(A),
      C_(C),
      D_(D) {
  if (!(p_ >= 1.0 && q_ >= 1.0))
    throw std::invalid_argument("instance: p, q must be >= 1");
  if (!(A_ > 0.0 && C_ > 0.0 && D_ > 0.0))
    throw std::invalid_argument("instance: A, C, D must be > 0");
  if (eps_.size() != levels_.size() || eta_.size() != levels_.size())
    throw std::invalid_argument("instance: eps/eta length must match levels");
  for (double e : eps_)
    if (!(e >= 0.0)) throw std::invalid_argument("instance: eps must be >= 0");
  for (double e : eta_)
    if (!(e >= 0.0)) throw std::invalid_argument("instance: eta must be >= 0");
  for (const auto& lv : levels_) {
    if (lv.map.coords.size() != lv.space.size())
      throw std::invalid_argument("instance: map does not cover its level");
    if (lv.map.q != q_)
      throw std::invalid_argument("instance: level map exponent != q");
  }
  sum_eps_p_ = power_sum(eps_, p_);
  sum_eta_q_ = power_sum(eta_, q_);

  const double pq = p_ / q_;
  for (std::size_t lv = 0; lv < levels_.size(); ++lv) {
    const auto& space = levels_[lv].space;
    const auto& map = levels_[lv].map;
    for (std::size_t u = 0; u < space.size(); ++u) {
      for (std::size_t v = u + 1; v < space.size(); ++v) {
        const double d = space.d(u, v);
        const double img = map.image_distance(u, v);
        if (d < eps_[lv] && !(img < eta_[lv]))
          clause_violations_.push_back({lv, u, v, d, img, 2});
        if (d >= C_ && !(img >= D_))
          clause_violations_.push_back({lv, u, v, d, img, 3});
        if (d >= eps_[lv] && d < C_) {
          const double da = std::pow(d, pq);
          if (!(img >= da / A_ && img <= da * A_))
            clause_violations_.push_back({lv, u, v, d, img, 4});
        }
      }
    }
  }
}

double ReductionInstance::level_d(std::size_t lv, std::size_t xu,
                                  std::size_t yv) const {
  return levels_.at(lv).space.d(xu, yv);
}

double ReductionInstance::level_image_d(std::size_t lv, std::size_t xu,
                                        std::size_t yv) const {
  return levels_.at(lv).map.image_distance(xu, yv);
}

ThetaSequence build_theta(const ReductionInstance& inst,
                          const std::vector<std::size_t>& x) {
  if (x.size() != inst.levels().size())
    throw std::invalid_argument("theta: choice length must match levels");
  ThetaSequence seq;
  for (std::size_t n = 0; n < x.size(); ++n) {
    const auto& lv = inst.levels()[n];
    if (x[n] >= lv.space.size())
      throw std::invalid_argument("theta: point index out of range");
    const auto& c = lv.map.coords[x[n]];
    for (std::size_t m = 0; m < c.size(); ++m)
      seq.entries.emplace_back(pair_index(n, m), c[m]);
  }
  std::sort(seq.entries.begin(), seq.entries.end());
  return seq;
}

double theta_gap_power_sum(const ThetaSequence& tx, const ThetaSequence& ty,
                           double q) {
  double acc = 0.0;
  std::size_t i = 0, j = 0;
  while (i < tx.entries.size() || j < ty.entries.size()) {
    double diff;
    if (j >= ty.entries.size() ||
        (i < tx.entries.size() && tx.entries[i].first < ty.entries[j].first)) {
      diff = tx.entries[i++].second;
    } else if (i >= tx.entries.size() ||
               ty.entries[j].first < tx.entries[i].first) {
      diff = ty.entries[j++].second;
    } else {
      diff = tx.entries[i++].second - ty.entries[j++].second;
    }
    acc += std::pow(std::fabs(diff), q);
  }
  return acc;
}

IndexPartition partition_indices(std::span<const double> dvals,
                                 std::span<const double> eps, double C) {
  if (dvals.size() != eps.size())
    throw std::invalid_argument("partition: dvals/eps length mismatch");
  IndexPartition part;
  for (std::size_t n = 0; n < dvals.size(); ++n) {
    if (dvals[n] < eps[n])
      part.I1.push_back(n);
    else if (dvals[n] >= C)
      part.I2.push_back(n);
    else
      part.I3.push_back(n);
  }
  return part;
}

IndexPartition partition_with_sums(std::span<const double> dvals,
                                   std::span<const double> eps, double C,
                                   double p, std::span<const double> deltas,
                                   double q) {
  IndexPartition part = partition_indices(dvals, eps, C);
  if (!deltas.empty() && deltas.size() != dvals.size())
    throw std::invalid_argument("partition: deltas length mismatch");
  const std::vector<std::size_t>* parts[3] = {&part.I1, &part.I2, &part.I3};
  for (int k = 0; k < 3; ++k) {
    for (std::size_t n : *parts[k]) {
      part.sum_d_p[k] += std::pow(dvals[n], p);
      if (!deltas.empty()) part.sum_delta_q[k] += std::pow(deltas[n], q);
    }
  }
  return part;
}

namespace {

// comparisons up to accumulated rounding; slack stays raw
constexpr double kRelGuard = 1e-12;

bool leq_guarded(double lhs, double rhs) {
  const double tol = kRelGuard * std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
  return lhs <= rhs + tol;
}

InequalityCheck make_check(std::string name, double lhs, double rhs,
                           bool pass) {
  return {std::move(name), lhs, rhs, pass, rhs - lhs};
}

}  // namespace

BoundReport verify_reduction_bounds(const ReductionInstance& inst,
                                    const std::vector<std::size_t>& x,
                                    const std::vector<std::size_t>& y) {
  const std::size_t L = inst.levels().size();
  if (x.size() != L || y.size() != L)
    throw std::invalid_argument("bounds: choice length must match levels");
  std::vector<double> d(L), delta(L), eps_i1, eta_i1;
  for (std::size_t n = 0; n < L; ++n) {
    if (x[n] >= inst.levels()[n].space.size() ||
        y[n] >= inst.levels()[n].space.size())
      throw std::invalid_argument("bounds: point index out of range");
    d[n] = inst.level_d(n, x[n], y[n]);
    delta[n] = inst.level_image_d(n, x[n], y[n]);
  }

  BoundReport rep;
  rep.partition =
      partition_with_sums(d, inst.eps(), inst.C(), inst.p(), delta, inst.q());
  const auto& part = rep.partition;
  for (std::size_t n : part.I1) {
    eps_i1.push_back(inst.eps()[n]);
    eta_i1.push_back(inst.eta()[n]);
  }
  const double eps_p = power_sum(eps_i1, inst.p());
  const double eta_q = power_sum(eta_i1, inst.q());
  const double Aq = std::pow(inst.A(), inst.q());
  const double i2 = static_cast<double>(part.I2.size());
  const double Cp_i2 = std::pow(inst.C(), inst.p()) * i2;
  const double Dq_i2 = std::pow(inst.D(), inst.q()) * i2;

  // strict termwise dominations; an empty I1 degenerates both to 0 = 0
  const bool i1_empty = part.I1.empty();
  rep.inequalities.push_back(make_check(
      "I1_source_lt_eps_p", part.sum_d_p[0], eps_p,
      i1_empty ? part.sum_d_p[0] == 0.0
               : leq_guarded(part.sum_d_p[0], eps_p)));
  rep.inequalities.push_back(make_check(
      "I1_image_lt_eta_q", part.sum_delta_q[0], eta_q,
      i1_empty ? part.sum_delta_q[0] == 0.0
               : leq_guarded(part.sum_delta_q[0], eta_q)));
  rep.inequalities.push_back(make_check("I2_source_ge_Cp", Cp_i2,
                                        part.sum_d_p[1],
                                        leq_guarded(Cp_i2, part.sum_d_p[1])));
  rep.inequalities.push_back(make_check("I2_image_ge_Dq", Dq_i2,
                                        part.sum_delta_q[1],
                                        leq_guarded(Dq_i2, part.sum_delta_q[1])));
  const double lhs_low = part.sum_d_p[2] / Aq;
  const double rhs_high = part.sum_d_p[2] * Aq;
  rep.inequalities.push_back(make_check(
      "I3_lower_sandwich", lhs_low, part.sum_delta_q[2],
      leq_guarded(lhs_low, part.sum_delta_q[2])));
  rep.inequalities.push_back(make_check(
      "I3_upper_sandwich", part.sum_delta_q[2], rhs_high,
      leq_guarded(part.sum_delta_q[2], rhs_high)));
  return rep;
}

DenseSnapResult dense_snap(const std::vector<FiniteMetricSpace>& spaces,
                           const std::vector<Net>& nets,
                           const std::vector<std::size_t>& x, double p) {
  if (spaces.size() != nets.size() || spaces.size() != x.size())
    throw std::invalid_argument("dense_snap: length mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("dense_snap: p must be >= 1");
  DenseSnapResult res;
  for (std::size_t n = 0; n < spaces.size(); ++n) {
    const double radius = std::ldexp(1.0, -static_cast<int>(n));
    res.bound += std::pow(radius, p);
    if (x[n] >= spaces[n].size())
      throw std::invalid_argument("dense_snap: point index out of range");
    if (nets[n].assignment.size() != spaces[n].size() ||
        nets[n].assignment[x[n]] >= nets[n].members.size()) {
      res.uncovered_level = n;
      return res;
    }
    const std::size_t target = nets[n].member_point(x[n]);
    const double disp = spaces[n].d(x[n], target);
    if (!(disp < radius)) {
      res.uncovered_level = n;
      return res;
    }
    res.snapped.push_back(target);
    res.displacement.push_back(disp);
  }
  res.ok = true;
  res.displacement_power_sum = power_sum(res.displacement, p);
  return res;
}

}  // namespace finmet
