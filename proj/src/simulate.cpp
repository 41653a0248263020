#include "finmet/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "finmet/random.hpp"

namespace finmet {
namespace {

// Image-side classification implied by the I1/I2/I3 bookkeeping: the model
// values tend to zero for every kind, so I2 is always finite; a positive
// repeated eps tail eventually absorbs the sequence into I1 (image side
// dominated by the eta sums, finite under hypothesis (1)); otherwise the
// cofinal part of {d < C} sits in I3 where the A-sandwich ties image
// convergence to the source p-sum.
TailClass image_classify(const TailModel& model, double p, double eps_tail) {
  if (eps_tail > 0.0) return TailClass::convergent;
  return classify_tail(model, p);
}

}  // namespace

SimulateReport simulate(const ReductionInstance& inst,
                        const std::vector<TailModel>& models,
                        std::size_t prefix_len, std::size_t samples,
                        std::uint64_t seed) {
  if (inst.levels().empty())
    throw std::invalid_argument("simulate: instance has no levels");
  if (prefix_len == 0)
    throw std::invalid_argument("simulate: prefix must be >= 1");

  SimulateReport rep;
  rep.prefix = prefix_len;
  rep.samples = samples;
  rep.seed = seed;
  rep.extended = prefix_len > inst.levels().size();
  const double eps_tail = inst.eps().back();
  const double eta_tail = inst.eta().back();
  rep.tail_hypothesis_ok = !(rep.extended && (eps_tail > 0.0 || eta_tail > 0.0));

  // schematic extension: levels beyond the instance repeat the last one
  std::vector<ReductionLevel> ext_levels;
  std::vector<double> ext_eps, ext_eta;
  ext_levels.reserve(prefix_len);
  for (std::size_t n = 0; n < prefix_len; ++n) {
    const std::size_t src = std::min(n, inst.levels().size() - 1);
    ext_levels.push_back(inst.levels()[src]);
    ext_eps.push_back(inst.eps()[src]);
    ext_eta.push_back(inst.eta()[src]);
  }
  const ReductionInstance ext(std::move(ext_levels), std::move(ext_eps),
                              std::move(ext_eta), inst.p(), inst.q(), inst.A(),
                              inst.C(), inst.D());

  const double Aq = std::pow(inst.A(), inst.q());
  const std::array<std::size_t, 4> marks = {
      (prefix_len + 3) / 4, (prefix_len + 1) / 2, (3 * prefix_len + 3) / 4,
      prefix_len};

  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    const TailModel& model = models[mi];
    ModelSimulation sim;
    sim.model_kind = model.kind();
    sim.source_class = classify_tail(model, inst.p());

    std::size_t agree_count = 0, bounds_count = 0, realizable_count = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      RandomSource rng =
          RandomSource::for_stream(seed, mi * 0x10001ull + s);
      SimulateSample sample;
      sample.x.resize(prefix_len);
      sample.y.resize(prefix_len);
      std::vector<double> dvals(prefix_len);

      for (std::size_t n = 0; n < prefix_len; ++n) {
        const auto& space = ext.levels()[n].space;
        const double target = model.value_at(n);
        double best_dev = std::numeric_limits<double>::infinity();
        std::vector<std::pair<std::size_t, std::size_t>> ties;
        for (std::size_t a = 0; a < space.size(); ++a) {
          for (std::size_t b = a; b < space.size(); ++b) {
            const double dev = std::fabs(space.d(a, b) - target);
            if (dev < best_dev) {
              best_dev = dev;
              ties.clear();
              ties.push_back({a, b});
            } else if (dev == best_dev) {
              ties.push_back({a, b});
            }
          }
        }
        const auto pick = ties[rng.below(ties.size())];
        sample.x[n] = pick.first;
        sample.y[n] = pick.second;
        dvals[n] = space.d(pick.first, pick.second);
        sample.max_deviation = std::max(sample.max_deviation, best_dev);
        if (best_dev > kRealizationTolerance * std::max(target, 1e-12))
          sample.realizable = false;
      }

      const BoundReport bounds = verify_reduction_bounds(ext, sample.x, sample.y);
      sample.i1 = bounds.partition.I1.size();
      sample.i2 = bounds.partition.I2.size();
      sample.i3 = bounds.partition.I3.size();
      for (int k = 0; k < 3; ++k) {
        sample.sum_d_p[k] = bounds.partition.sum_d_p[k];
        sample.sum_delta_q[k] = bounds.partition.sum_delta_q[k];
      }
      sample.bounds_pass = bounds.all_pass();

      for (std::size_t mark : marks) {
        double acc = 0.0;
        for (std::size_t n : bounds.partition.I3)
          if (n < mark) acc += std::pow(dvals[n], inst.p());
        sample.i3_lower_cumulative.push_back(acc / Aq);
      }

      sample.source_class = sim.source_class;
      sample.image_class = image_classify(model, inst.p(), eps_tail);
      sample.agree = sample.source_class == sample.image_class;

      if (sample.realizable) {
        ++realizable_count;
        if (sample.agree) ++agree_count;
        if (sample.bounds_pass) ++bounds_count;
      } else {
        ++sim.flagged;
      }
      sim.samples.push_back(std::move(sample));
    }
    if (realizable_count > 0) {
      sim.agreement_rate =
          static_cast<double>(agree_count) / static_cast<double>(realizable_count);
      sim.bound_pass_rate = static_cast<double>(bounds_count) /
                            static_cast<double>(realizable_count);
    }
    rep.models.push_back(std::move(sim));
  }
  return rep;
}

}  // namespace finmet
