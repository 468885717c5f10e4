#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>

#include "naesat/bounds.hpp"
#include "naesat/oracle.hpp"
#include "test_util.hpp"

using namespace naesat;
using naesat::testutil::all_assignments;
using naesat::testutil::instance;

namespace {

// Plain scalar enumeration, the reference for the bit-parallel scan.
std::optional<Assignment> scalar_decide(const Instance& f, Mode mode) {
  for (std::uint64_t mask = 0; mask < (1ULL << f.num_vars()); ++mask) {
    const Assignment a = Assignment::from_mask(f.num_vars(), mask);
    if (count_satisfied(f, a, mode) == f.clause_count()) return a;
  }
  return std::nullopt;
}

MaxResult scalar_max(const Instance& f, Mode mode) {
  MaxResult best{-1, Assignment(f.num_vars())};
  for (std::uint64_t mask = 0; mask < (1ULL << f.num_vars()); ++mask) {
    const Assignment a = Assignment::from_mask(f.num_vars(), mask);
    const std::int64_t s = count_satisfied(f, a, mode);
    if (s > best.optimum) best = {s, a};
  }
  return best;
}

}  // namespace

TEST_CASE("brute_decide fixed-order examples") {
  const Instance pair = instance(2, {{1, 2}, {-1, -2}});
  const auto got = brute_decide(pair, Mode::nae);
  REQUIRE(got.has_value());
  CHECK(got->to_bits() == "10");  // packed order decides between (1,0) and (0,1)

  const Instance all_pairs = instance(2, {{1, 2}, {1, -2}, {-1, 2}, {-1, -2}});
  CHECK(!brute_decide(all_pairs, Mode::nae).has_value());

  CHECK_THROWS_AS(brute_decide(Instance(34, {}), Mode::nae), Error);
}

TEST_CASE("brute_decide and brute_max match scalar enumeration") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const auto gen = random_instance(n, 3, 2 * n, GenMode::uniform, seed);
    for (Mode mode : {Mode::sat, Mode::nae}) {
      const auto fast = brute_decide(gen.instance, mode);
      const auto slow = scalar_decide(gen.instance, mode);
      CHECK(fast.has_value() == slow.has_value());
      if (fast && slow) CHECK(*fast == *slow);

      const MaxResult fast_max = brute_max(gen.instance, mode);
      const MaxResult slow_max = scalar_max(gen.instance, mode);
      CHECK(fast_max.optimum == slow_max.optimum);
      CHECK(fast_max.assignment == slow_max.assignment);
    }
  }
}

TEST_CASE("threaded oracle equals sequential") {
  const auto gen = random_instance(16, 3, 40, GenMode::uniform, 3);
  const auto seq = brute_max(gen.instance, Mode::nae, {}, 1);
  const auto par = brute_max(gen.instance, Mode::nae, {}, 4);
  CHECK(seq.optimum == par.optimum);
  CHECK(seq.assignment == par.assignment);
  CHECK(brute_decide(gen.instance, Mode::nae, {}, 1) == brute_decide(gen.instance, Mode::nae, {}, 4));
}

TEST_CASE("brute_max basics and expectation lower bound") {
  CHECK(brute_max(instance(2, {{1, 2}}), Mode::nae).optimum == 1);
  CHECK(brute_max(instance(3, {{1, 2, 3}}), Mode::nae).optimum == 1);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 6 + static_cast<int>(seed % 7);
    const auto gen = random_instance(n, 3, 3 * n, GenMode::uniform, seed);
    const InstanceStats st = stats(gen.instance);
    Rational expect_sat(0), expect_nae(0);
    for (int len = 1; len <= st.max_len(); ++len) {
      const Rational full = rat_pow(Rational(2), static_cast<unsigned long>(len));
      expect_sat += Rational(st.per_length[len]) * (full - 1) / full;
      expect_nae += Rational(st.per_length[len]) * (full - 2) / full;
    }
    CHECK(Rational(brute_max(gen.instance, Mode::sat).optimum) >= expect_sat);
    CHECK(Rational(brute_max(gen.instance, Mode::nae).optimum) >= expect_nae);
    CHECK(brute_max(gen.instance, Mode::nae).optimum <= brute_max(gen.instance, Mode::sat).optimum);
  }
}

TEST_CASE("lp_solve_symmetric known values") {
  const LpSolution k3 = lp_solve_symmetric(3);
  CHECK(k3.lambda == Rational(7, 16));
  CHECK(k3.pi_at(1) == Rational(1, 6));
  CHECK(k3.pi_at(2) == Rational(1, 6));

  CHECK(lp_solve_symmetric(4).lambda == Rational(82, 405));

  CHECK_THROWS_AS(lp_solve_symmetric(2), Error);
  CHECK_THROWS_AS(lp_solve_symmetric(17), Error);
}

TEST_CASE("lp solution satisfies every constraint exactly") {
  for (int k = 3; k <= 16; ++k) {
    const LpSolution sol = lp_solve_symmetric(k);
    // normalization over the full solution space
    Rational total(0);
    for (std::uint32_t a = 1; a < (1u << k) - 1; ++a) total += sol.pi_at(std::popcount(a));
    CHECK(total == 1);
    // lambda identity for every reference point, exact
    const Rational r(1, k - 1);
    for (std::uint32_t astar = 1; astar < (1u << k) - 1; ++astar) {
      Rational lhs(0);
      for (std::uint32_t a = 1; a < (1u << k) - 1; ++a)
        lhs += sol.pi_at(std::popcount(a)) * rat_pow(r, std::popcount(a ^ astar));
      CHECK(lhs == sol.lambda);
    }
    for (int y = 1; y <= k - 1; ++y) CHECK(sol.pi_at(y) >= 0);
  }
}

TEST_CASE("independent elimination equals the closed form for every k") {
  for (int k = 3; k <= 16; ++k) {
    const LpSolution gauss = lp_solve_symmetric(k);
    const LpSolution closed = bounds::lp_closed_form(k);
    CHECK(gauss == closed);
  }
}
