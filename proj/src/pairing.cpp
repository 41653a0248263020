#include "finmet/pairing.hpp"

#include <cmath>
#include <stdexcept>

namespace finmet {

std::uint64_t pair_index(std::uint64_t n, std::uint64_t m) {
  const std::uint64_t s = n + m;
  if (s < n || s > 0xFFFFFFFFull)
    throw std::overflow_error("pair_index: n + m too large");
  return s * (s + 1) / 2 + m;
}

std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t k) {
  if (k > (1ull << 61))
    throw std::overflow_error("unpair_index: k too large");
  // diagonal s from the float sqrt, corrected to be exact
  auto s = static_cast<std::uint64_t>(
      (std::sqrt(8.0 * static_cast<double>(k) + 1.0) - 1.0) / 2.0);
  while (s * (s + 1) / 2 > k) --s;
  while ((s + 1) * (s + 2) / 2 <= k) ++s;
  const std::uint64_t m = k - s * (s + 1) / 2;
  return {s - m, m};
}

}  // namespace finmet
