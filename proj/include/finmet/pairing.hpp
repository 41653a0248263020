#pragma once

#include <cstdint>
#include <utility>

namespace finmet {

// Diagonal pairing k = (n+m)(n+m+1)/2 + m. Bijective N^2 -> N with m <= k,
// so coordinate m of a level-n block lands at a flat index no smaller than m.
std::uint64_t pair_index(std::uint64_t n, std::uint64_t m);

// exact inverse
std::pair<std::uint64_t, std::uint64_t> unpair_index(std::uint64_t k);

}  // namespace finmet
