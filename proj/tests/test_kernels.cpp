#include <doctest.h>

#include <cmath>
#include <vector>

#include "finmet/kernels.hpp"
#include "finmet/random.hpp"

using namespace finmet;

namespace {

std::vector<double> random_vec(std::size_t n, RandomSource& rng, double lo,
                               double hi) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

}  // namespace

TEST_CASE("scalar and avx2 lanes agree") {
  const auto* wide = kernels::avx2();
  if (!wide) {
    MESSAGE("AVX2 unavailable; lane equivalence skipped");
    return;
  }
  const auto& ref = kernels::scalar();
  RandomSource rng(20230);

  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 33u, 257u}) {
    auto a = random_vec(n, rng, -3.0, 3.0);
    auto b = random_vec(n, rng, -3.0, 3.0);

    // accumulators: same sums up to reduction-order rounding
    const double tol = 1e-13 * (1.0 + static_cast<double>(n));
    CHECK(std::fabs(ref.sum(a.data(), n) - wide->sum(a.data(), n)) <=
          tol * (1.0 + std::fabs(ref.sum(a.data(), n))));
    CHECK(std::fabs(ref.sum_sq(a.data(), n) - wide->sum_sq(a.data(), n)) <=
          tol * (1.0 + ref.sum_sq(a.data(), n)));
    CHECK(std::fabs(ref.sum_sq_diff(a.data(), b.data(), n) -
                    wide->sum_sq_diff(a.data(), b.data(), n)) <=
          tol * (1.0 + ref.sum_sq_diff(a.data(), b.data(), n)));
    CHECK(std::fabs(ref.sum_abs_diff(a.data(), b.data(), n) -
                    wide->sum_abs_diff(a.data(), b.data(), n)) <=
          tol * (1.0 + ref.sum_abs_diff(a.data(), b.data(), n)));
    CHECK(ref.sum_abs_pow(a.data(), n, 1.7) ==
          wide->sum_abs_pow(a.data(), n, 1.7));

    // comparison kernels: bitwise agreement required
    auto row_i = random_vec(n, rng, 0.0, 2.0);
    auto row_k = random_vec(n, rng, 0.0, 2.0);
    auto ref_row = row_i;
    auto wide_row = row_i;
    ref.min_plus_relax(ref_row.data(), row_k.data(), 0.7, n);
    wide->min_plus_relax(wide_row.data(), row_k.data(), 0.7, n);
    CHECK(ref_row == wide_row);

    std::vector<std::uint32_t> ref_hits(n + 1), wide_hits(n + 1);
    const std::size_t rc =
        ref.triangle_scan(row_i.data(), row_k.data(), 0.3, n, ref_hits.data());
    const std::size_t wc = wide->triangle_scan(row_i.data(), row_k.data(), 0.3,
                                               n, wide_hits.data());
    REQUIRE(rc == wc);
    for (std::size_t i = 0; i < rc; ++i) CHECK(ref_hits[i] == wide_hits[i]);
  }
}

TEST_CASE("min_plus_relax relaxes exactly") {
  const auto& k = kernels::active();
  std::vector<double> row_i = {5.0, 1.0, 2.0};
  const std::vector<double> row_k = {0.0, 3.0, 1.0};
  k.min_plus_relax(row_i.data(), row_k.data(), 1.5, 3);
  CHECK(row_i == std::vector<double>{1.5, 1.0, 2.0});
}

TEST_CASE("triangle_scan flags exactly the violating columns") {
  const auto& k = kernels::active();
  // row_i[k] > d_ij + row_j[k]
  const std::vector<double> row_i = {3.0, 1.0, 2.0, 10.0};
  const std::vector<double> row_j = {1.0, 1.0, 1.9, 2.0};
  std::vector<std::uint32_t> hits(4);
  const std::size_t cnt = k.triangle_scan(row_i.data(), row_j.data(), 1.0, 4,
                                          hits.data());
  REQUIRE(cnt == 2);
  CHECK(hits[0] == 0);
  CHECK(hits[1] == 3);
}

TEST_CASE("active lane is one of the tables") {
  const auto& lane = kernels::active();
  const bool is_scalar = &lane == &kernels::scalar();
  const bool is_avx2 = kernels::avx2() && &lane == kernels::avx2();
  CHECK((is_scalar || is_avx2));
}
