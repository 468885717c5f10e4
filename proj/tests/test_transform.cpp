#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "naesat/oracle.hpp"
#include "naesat/transform.hpp"
#include "test_util.hpp"

using namespace naesat;
using naesat::testutil::all_assignments;
using naesat::testutil::clause;
using naesat::testutil::instance;

TEST_CASE("conjugate flips every polarity and is an involution") {
  const Clause c = clause({1, -2});
  const Clause conj = conjugate(c);
  CHECK(conj == clause({-1, 2}));
  CHECK(conjugate(conj) == c);
}

TEST_CASE("nae equals sat of both pair members") {
  // exhaustive over every clause shape up to length 4
  for (int len = 2; len <= 4; ++len) {
    for (int pol = 0; pol < (1 << len); ++pol) {
      std::vector<Literal> lits;
      for (int j = 0; j < len; ++j) lits.emplace_back(j + 1, (pol >> j) & 1);
      const Clause c(std::move(lits));
      const Clause conj = conjugate(c);
      for (const Assignment& alpha : all_assignments(len)) {
        const bool nae = clause_satisfied(c, alpha, Mode::nae);
        const bool both = clause_satisfied(c, alpha, Mode::sat) && clause_satisfied(conj, alpha, Mode::sat);
        CHECK(nae == both);
      }
    }
  }
}

TEST_CASE("to_conjugate_instance") {
  const Instance f = instance(2, {{1, 2}});
  const Instance closed = to_conjugate_instance(f);
  CHECK(closed == instance(2, {{1, 2}, {-1, -2}}));

  // idempotence on conjugate-closed inputs
  CHECK(to_conjugate_instance(closed) == closed);

  CHECK_THROWS_AS(to_conjugate_instance(instance(2, {{1}, {1, 2}})), Error);

  // equisatisfiability against brute force
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 6 + static_cast<int>(seed % 7);
    const auto gen = random_instance(n, 3, 2 * n + static_cast<int>(seed % 9), GenMode::uniform, seed);
    const bool nae_sat = brute_decide(gen.instance, Mode::nae).has_value();
    const bool closed_sat = brute_decide(to_conjugate_instance(gen.instance), Mode::sat).has_value();
    CHECK(nae_sat == closed_sat);
  }
}

TEST_CASE("greedy_pairs selection and maximality") {
  // two disjoint pairs
  const Instance two = to_conjugate_instance(instance(6, {{1, 2, 3}, {4, 5, 6}}));
  CHECK(greedy_pairs(two).size() == 2);

  // overlapping pairs leave only one
  const Instance overlap = to_conjugate_instance(instance(5, {{1, 2, 3}, {3, 4, 5}}));
  const PairSet p = greedy_pairs(overlap);
  CHECK(p.size() == 1);
  CHECK(p[0].clause == clause({1, 2, 3}));

  // maximality: no remaining conjugate pair is variable-disjoint from P
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 8 + static_cast<int>(seed % 10);
    const auto gen = random_instance(n, 3, n, GenMode::uniform, seed);
    const Instance closed = to_conjugate_instance(gen.instance);
    const PairSet pairs = greedy_pairs(closed);

    std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
    for (const ConjugatePair& pr : pairs.pairs())
      for (int v : pr.variables) used[static_cast<std::size_t>(v)] = true;

    std::unordered_set<Clause::Key, ClauseKeyHash> present;
    for (const Clause& c : closed.clauses()) present.insert(c.key());
    for (const Clause& c : closed.clauses()) {
      if (!present.count(conjugate(c).key())) continue;
      bool disjoint = true;
      for (const Literal& l : c.literals())
        if (used[static_cast<std::size_t>(l.var)]) disjoint = false;
      CHECK(!disjoint);  // otherwise P was not maximal
    }
  }
}

TEST_CASE("residual after fixing a maximal pair set is a (k-1)-instance") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 9 + static_cast<int>(seed % 8);
    const auto gen = random_instance(n, 3, 2 * n, GenMode::uniform, seed);
    const Instance closed = to_conjugate_instance(gen.instance);
    const PairSet pairs = greedy_pairs(closed);
    if (pairs.empty()) continue;

    // fix every pair variable arbitrarily (all to true here)
    PartialAssignment partial;
    for (const ConjugatePair& pr : pairs.pairs())
      for (int v : pr.variables) partial.assign(v, true);
    const auto simplified = fix_and_simplify(closed, partial);
    if (!simplified) continue;  // conflict is fine; nothing to check
    CHECK(simplified->max_len() <= closed.max_len() - 1);
  }
}

TEST_CASE("fix_and_simplify") {
  const Instance f = instance(2, {{1, 2}});
  PartialAssignment x1_true;
  x1_true.assign(1, true);
  const auto satisfied = fix_and_simplify(f, x1_true);
  REQUIRE(satisfied.has_value());
  CHECK(satisfied->clause_count() == 0);

  PartialAssignment x1_false;
  x1_false.assign(1, false);
  const auto shortened = fix_and_simplify(f, x1_false);
  REQUIRE(shortened.has_value());
  CHECK(*shortened == instance(2, {{2}}));

  const Instance unit = instance(1, {{1}});
  PartialAssignment bad;
  bad.assign(1, false);
  CHECK(!fix_and_simplify(unit, bad).has_value());
}

TEST_CASE("fix_and_simplify preserves extensions") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 7 + static_cast<int>(seed % 5);
    const auto gen = random_instance(n, 3, 2 * n, GenMode::uniform, seed);
    Rng rng(seed);
    PartialAssignment partial;
    std::vector<int> fixed_vars;
    for (int v = 1; v <= n / 2; ++v) {
      partial.assign(v, rng.coin());
      fixed_vars.push_back(v);
    }
    const auto simplified = fix_and_simplify(gen.instance, partial);
    for (const Assignment& alpha : all_assignments(n)) {
      bool extends = true;
      for (int v : fixed_vars)
        if (alpha.get(v) != *partial.get(v)) extends = false;
      if (!extends) continue;
      const bool sat_full = count_satisfied(gen.instance, alpha, Mode::sat) == gen.instance.clause_count();
      const bool sat_simplified =
          simplified.has_value() &&
          count_satisfied(*simplified, alpha, Mode::sat) == simplified->clause_count();
      CHECK(sat_full == sat_simplified);
    }
  }
}
