#include <doctest.h>

#include <cmath>
#include <set>

#include "finmet/net.hpp"
#include "finmet/pairing.hpp"
#include "finmet/random.hpp"
#include "finmet/reduction.hpp"
#include "support/generators.hpp"

using namespace finmet;

TEST_CASE("pairing: diagonal enumeration base cases") {
  CHECK(pair_index(0, 0) == 0);
  CHECK(pair_index(1, 0) == 1);
  CHECK(pair_index(0, 1) == 2);
}

TEST_CASE("pairing: bijective with m <= k, exhaustive over a 1000x1000 block") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t n = 0; n < 1000; ++n) {
    for (std::uint64_t m = 0; m < 1000; ++m) {
      const std::uint64_t k = pair_index(n, m);
      CHECK(m <= k);
      CHECK(seen.insert(k).second);
      const auto [nn, mm] = unpair_index(k);
      CHECK(nn == n);
      CHECK(mm == m);
    }
  }
}

TEST_CASE("pairing: first 10^6 flat indices unpair and re-pair exactly") {
  for (std::uint64_t k = 0; k < 1000000; ++k) {
    const auto [n, m] = unpair_index(k);
    CHECK(pair_index(n, m) == k);
  }
}

TEST_CASE("build_theta: a single 2-coordinate level occupies indices 0 and 2") {
  RandomSource rng(1);
  std::vector<ReductionLevel> levels;
  Embedding map;
  map.q = 2.0;
  map.dim = 2;
  map.coords = {{0.0, 0.0}, {0.3, 0.4}};
  levels.push_back({FiniteMetricSpace({"a", "b"}, {0, 0.5, 0.5, 0}, false),
                    std::move(map)});
  const ReductionInstance inst(std::move(levels), {0.0}, {0.0}, 2.0, 2.0, 2.0,
                               1.0, 0.5);
  const auto theta = build_theta(inst, {1});
  REQUIRE(theta.entries.size() == 2);
  CHECK(theta.entries[0].first == 0);
  CHECK(theta.entries[0].second == 0.3);
  CHECK(theta.entries[1].first == 2);
  CHECK(theta.entries[1].second == 0.4);
}

TEST_CASE("build_theta: equal choices give identical sequences") {
  RandomSource rng(2);
  const auto inst = testgen::power_instance({2.0, 1.5, 1.0, 6, true}, rng);
  std::vector<std::size_t> x(inst.levels().size());
  for (auto& v : x) v = rng.below(2);
  const auto a = build_theta(inst, x);
  const auto b = build_theta(inst, x);
  CHECK(a.entries == b.entries);
}

TEST_CASE("property: the rearrangement identity holds to 1e-12 relative") {
  RandomSource rng(3);
  const double grid[] = {1.0, 1.5, 2.0};
  for (int trial = 0; trial < 60; ++trial) {
    testgen::PowerInstanceOptions opt;
    opt.p = grid[trial % 3];
    opt.q = grid[(trial / 3) % 3];
    opt.levels = 4 + rng.below(6);
    opt.with_eps = trial % 2 == 0;
    const auto inst = testgen::power_instance(opt, rng);
    std::vector<std::size_t> x(inst.levels().size()), y(inst.levels().size());
    for (std::size_t n = 0; n < x.size(); ++n) {
      x[n] = rng.below(2);
      y[n] = rng.below(2);
    }
    const auto tx = build_theta(inst, x);
    const auto ty = build_theta(inst, y);
    const double flat = theta_gap_power_sum(tx, ty, opt.q);
    double levelwise = 0.0;
    for (std::size_t n = 0; n < x.size(); ++n)
      levelwise += std::pow(inst.level_image_d(n, x[n], y[n]), opt.q);
    CHECK(flat == doctest::Approx(levelwise).epsilon(1e-12));
  }
}

TEST_CASE("partition_indices: the worked example splits one level each way") {
  const std::vector<double> dvals = {0.05, 3.0, 1.0};
  const std::vector<double> eps = {0.1, 0.1, 0.1};
  const auto part = partition_indices(dvals, eps, 2.0);
  CHECK(part.I1 == std::vector<std::size_t>{0});
  CHECK(part.I2 == std::vector<std::size_t>{1});
  CHECK(part.I3 == std::vector<std::size_t>{2});
}

TEST_CASE("partition_indices: all far, and the empty input") {
  const std::vector<double> dvals = {5.0, 7.0};
  const std::vector<double> eps = {0.1, 0.1};
  const auto part = partition_indices(dvals, eps, 2.0);
  CHECK(part.I1.empty());
  CHECK(part.I3.empty());
  CHECK(part.I2.size() == 2);

  const auto empty = partition_with_sums({}, {}, 2.0, 2.0);
  CHECK(empty.I1.empty());
  CHECK(empty.I2.empty());
  CHECK(empty.I3.empty());
  CHECK(empty.sum_d_p[0] == 0.0);
  CHECK(empty.sum_d_p[1] == 0.0);
  CHECK(empty.sum_d_p[2] == 0.0);
}

TEST_CASE("property: partition parts are disjoint and exhaustive") {
  RandomSource rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = rng.below(12);
    std::vector<double> dvals(n), eps(n);
    for (std::size_t i = 0; i < n; ++i) {
      dvals[i] = rng.uniform(0.0, 3.0);
      eps[i] = rng.uniform(0.0, 2.5);  // eps above C happens on purpose
    }
    const double C = rng.uniform(0.2, 2.0);
    const auto part = partition_indices(dvals, eps, C);
    std::set<std::size_t> all;
    for (const auto* set : {&part.I1, &part.I2, &part.I3})
      for (std::size_t i : *set) CHECK(all.insert(i).second);
    CHECK(all.size() == n);
  }
}

TEST_CASE("verify_reduction_bounds: identity instance passes with a tight sandwich") {
  // p = q, isometric single-coordinate maps, A = 1
  RandomSource rng(5);
  const auto inst = testgen::power_instance({2.0, 2.0, 1.0, 8, false}, rng);
  std::vector<std::size_t> x(inst.levels().size(), 0), y(inst.levels().size(), 1);
  const auto rep = verify_reduction_bounds(inst, x, y);
  CHECK(rep.all_pass());
  // the I3 sandwich is an equality chain here
  for (const auto& c : rep.inequalities)
    if (c.name == "I3_lower_sandwich" || c.name == "I3_upper_sandwich")
      CHECK(std::fabs(c.slack) <= 1e-12 * (1.0 + std::fabs(c.lhs)));
}

TEST_CASE("verify_reduction_bounds: x == y trivially passes with empty parts") {
  RandomSource rng(6);
  const auto inst = testgen::power_instance({1.5, 2.0, 1.0, 6, true}, rng);
  std::vector<std::size_t> x(inst.levels().size(), 1);
  const auto rep = verify_reduction_bounds(inst, x, x);
  CHECK(rep.all_pass());
  CHECK(rep.partition.I2.empty());
  CHECK(rep.partition.sum_d_p[2] == 0.0);
}

TEST_CASE("property: bounds pass on every instance whose clause check passed") {
  RandomSource rng(7);
  const double grid[] = {1.0, 1.5, 2.0};
  for (int trial = 0; trial < 100; ++trial) {
    testgen::PowerInstanceOptions opt;
    opt.p = grid[trial % 3];
    opt.q = grid[(trial / 3) % 3];
    opt.levels = 3 + rng.below(8);
    opt.with_eps = rng.below(2) == 1;
    const auto inst = testgen::power_instance(opt, rng);
    REQUIRE(inst.clause_violations().empty());
    std::vector<std::size_t> x(inst.levels().size()), y(inst.levels().size());
    for (std::size_t n = 0; n < x.size(); ++n) {
      x[n] = rng.below(2);
      y[n] = rng.below(2);
    }
    const auto rep = verify_reduction_bounds(inst, x, y);
    CAPTURE(trial);
    CHECK(rep.all_pass());
  }
}

TEST_CASE("dense_snap: points already on the net do not move") {
  std::vector<FiniteMetricSpace> spaces;
  std::vector<Net> nets;
  for (int n = 0; n < 4; ++n) {
    spaces.push_back(FiniteMetricSpace::line(std::vector<double>{0.0, 10.0}));
    nets.push_back(greedy_net(spaces.back(), std::ldexp(1.0, -n)));
  }
  const auto res = dense_snap(spaces, nets, {0, 1, 0, 1}, 2.0);
  REQUIRE(res.ok);
  CHECK(res.snapped == std::vector<std::size_t>{0, 1, 0, 1});
  CHECK(res.displacement_power_sum == 0.0);
}

TEST_CASE("dense_snap: displacement power sum beats the dyadic bound") {
  // clustered lines so nets genuinely move points at coarse levels
  RandomSource rng(8);
  std::vector<FiniteMetricSpace> spaces;
  std::vector<Net> nets;
  std::vector<std::size_t> x;
  for (int n = 0; n < 10; ++n) {
    const double r = std::ldexp(1.0, -n);
    std::vector<double> pos;
    for (int i = 0; i < 6; ++i) pos.push_back(rng.uniform(0.0, 3.0 * r));
    std::sort(pos.begin(), pos.end());
    spaces.push_back(FiniteMetricSpace::line(pos));
    nets.push_back(greedy_net(spaces.back(), r));
    x.push_back(rng.below(pos.size()));
  }
  const auto res = dense_snap(spaces, nets, x, 2.0);
  REQUIRE(res.ok);
  for (int n = 0; n < 10; ++n)
    CHECK(res.displacement[n] < std::ldexp(1.0, -n));
  CHECK(res.displacement_power_sum < res.bound);
}

TEST_CASE("dense_snap: inputs equal from some level on stay equal after snapping") {
  RandomSource rng(9);
  std::vector<FiniteMetricSpace> spaces;
  std::vector<Net> nets;
  std::vector<std::size_t> x, y;
  for (int n = 0; n < 8; ++n) {
    const auto m = testgen::random_line(5, rng, 0.0, 2.0);
    spaces.push_back(m);
    nets.push_back(greedy_net(spaces.back(), std::ldexp(1.0, -n)));
    const std::size_t xi = rng.below(5), yi = rng.below(5);
    x.push_back(xi);
    y.push_back(n >= 3 ? xi : yi);
  }
  const auto rx = dense_snap(spaces, nets, x, 1.5);
  const auto ry = dense_snap(spaces, nets, y, 1.5);
  REQUIRE(rx.ok);
  REQUIRE(ry.ok);
  for (int n = 3; n < 8; ++n) CHECK(rx.snapped[n] == ry.snapped[n]);
}

TEST_CASE("dense_snap: a non-covering net is reported as a failure") {
  std::vector<FiniteMetricSpace> spaces = {
      FiniteMetricSpace::line(std::vector<double>{0.0, 5.0})};
  Net broken;
  broken.eps = 1.0;
  broken.members = {0};
  broken.assignment = {0, 0};  // pretends to cover point 1 at distance 5
  const auto res = dense_snap(spaces, {broken}, {1}, 2.0);
  REQUIRE_FALSE(res.ok);
  CHECK(res.uncovered_level == 0);
}
