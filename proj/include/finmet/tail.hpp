#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace finmet {

// Analytic description of a distance sequence n -> d_n(x(n), y(n)), for
// which convergence of sum d_n^p is decidable in closed form.
struct FiniteSupportTail {
  std::vector<double> values;  // zero beyond the listed prefix
};
struct PowerTail {
  double c = 1.0;  // d_n = c (n+1)^{-s}
  double s = 1.0;
};
struct GeometricTail {
  double c = 1.0;  // d_n = c r^n
  double r = 0.5;
};

class TailModel {
 public:
  using Variant = std::variant<FiniteSupportTail, PowerTail, GeometricTail>;

  explicit TailModel(Variant v);

  double value_at(std::size_t n) const;
  const Variant& data() const { return v_; }
  const char* kind() const;

 private:
  Variant v_;
};

enum class TailClass { convergent, divergent };

// finite support -> convergent; power -> convergent iff s*p > 1;
// geometric -> convergent
TailClass classify_tail(const TailModel& model, double p);

}  // namespace finmet
