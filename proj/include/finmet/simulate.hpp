#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "finmet/reduction.hpp"
#include "finmet/tail.hpp"

namespace finmet {

struct SimulateSample {
  std::vector<std::size_t> x, y;       // realized per-level choices
  double max_deviation = 0.0;          // worst |d_n - model value|
  bool realizable = true;              // deviation within tolerance everywhere
  std::size_t i1 = 0, i2 = 0, i3 = 0;  // partition sizes on the prefix
  double sum_d_p[3] = {0.0, 0.0, 0.0};
  double sum_delta_q[3] = {0.0, 0.0, 0.0};
  bool bounds_pass = false;
  std::vector<double> i3_lower_cumulative;  // A^{-q} sum_{I3} d^p at quarter prefixes
  TailClass source_class = TailClass::convergent;
  TailClass image_class = TailClass::convergent;
  bool agree = false;
};

struct ModelSimulation {
  std::string model_kind;
  TailClass source_class = TailClass::convergent;
  std::vector<SimulateSample> samples;
  double agreement_rate = 0.0;  // over realizable samples
  double bound_pass_rate = 0.0;
  std::size_t flagged = 0;      // unrealizable samples, kept not dropped
};

struct SimulateReport {
  std::size_t prefix = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool extended = false;            // levels repeated schematically
  bool tail_hypothesis_ok = true;   // repeated eps/eta tails stay summable
  std::vector<ModelSimulation> models;
};

// Relative deviation above which a level's realization is flagged.
inline constexpr double kRealizationTolerance = 0.25;

// For each model, draw `samples` per-level point pairs whose distances track
// the model (nearest available distance, seeded choice among exact ties),
// then compare the analytic source classification against the image-side
// classification implied by the I1/I2/I3 bookkeeping. Levels beyond the
// instance repeat the last level schematically.
SimulateReport simulate(const ReductionInstance& inst,
                        const std::vector<TailModel>& models,
                        std::size_t prefix_len, std::size_t samples,
                        std::uint64_t seed);

}  // namespace finmet
