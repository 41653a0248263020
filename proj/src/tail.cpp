#include "finmet/tail.hpp"

#include <cmath>
#include <stdexcept>

namespace finmet {

TailModel::TailModel(Variant v) : v_(std::move(v)) {
  if (const auto* fs = std::get_if<FiniteSupportTail>(&v_)) {
    for (double x : fs->values)
      if (!(x >= 0.0) || !std::isfinite(x))
        throw std::invalid_argument("tail: finite_support values must be >= 0");
  } else if (const auto* pw = std::get_if<PowerTail>(&v_)) {
    if (!(pw->c > 0.0) || !(pw->s > 0.0))
      throw std::invalid_argument("tail: power model needs c > 0, s > 0");
  } else if (const auto* ge = std::get_if<GeometricTail>(&v_)) {
    if (!(ge->c > 0.0) || !(ge->r > 0.0 && ge->r < 1.0))
      throw std::invalid_argument("tail: geometric model needs c > 0, 0 < r < 1");
  }
}

double TailModel::value_at(std::size_t n) const {
  if (const auto* fs = std::get_if<FiniteSupportTail>(&v_))
    return n < fs->values.size() ? fs->values[n] : 0.0;
  if (const auto* pw = std::get_if<PowerTail>(&v_))
    return pw->c * std::pow(static_cast<double>(n + 1), -pw->s);
  const auto& ge = std::get<GeometricTail>(v_);
  return ge.c * std::pow(ge.r, static_cast<double>(n));
}

const char* TailModel::kind() const {
  if (std::holds_alternative<FiniteSupportTail>(v_)) return "finite_support";
  if (std::holds_alternative<PowerTail>(v_)) return "power";
  return "geometric";
}

TailClass classify_tail(const TailModel& model, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("classify_tail: p must be >= 1");
  if (std::holds_alternative<FiniteSupportTail>(model.data()))
    return TailClass::convergent;
  if (const auto* pw = std::get_if<PowerTail>(&model.data()))
    return pw->s * p > 1.0 ? TailClass::convergent : TailClass::divergent;
  return TailClass::convergent;
}

}  // namespace finmet
