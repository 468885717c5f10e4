#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "naesat/formula.hpp"
#include "test_util.hpp"

using namespace naesat;
using naesat::testutil::all_assignments;
using naesat::testutil::clause;
using naesat::testutil::instance;

TEST_CASE("parse_dimacs basics") {
  const Instance f = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 0\n");
  CHECK(f.num_vars() == 3);
  CHECK(f.clause_count() == 2);
  CHECK(f.max_len() == 3);

  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -1 0\n"), Error);
  try {
    parse_dimacs("p cnf 2 1\n1 -1 0\n");
  } catch (const Error& e) {
    CHECK(e.code() == errc::tautological_clause);
  }

  // duplicate literals collapse
  const Instance dup = parse_dimacs("p cnf 2 1\n1 1 2 0\n");
  CHECK(dup.clauses()[0].size() == 2);

  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n2 0\n"), Error);       // out of range
  CHECK_THROWS_AS(parse_dimacs("p cnf 1 1\n0\n"), Error);         // empty clause
  CHECK_THROWS_AS(parse_dimacs("c only comments\n"), Error);      // missing header
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 2\n1 0\n"), Error);       // count mismatch
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 x 0\n"), Error);     // bad token
}

TEST_CASE("emit_dimacs and round trip") {
  CHECK(emit_dimacs(instance(1, {{1}})) == "p cnf 1 1\n1 0\n");
  CHECK(emit_dimacs(Instance(0, {})) == "p cnf 0 0\n");

  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const auto gen = random_instance(10, 3, 15, GenMode::uniform, seed);
    const Instance reparsed = parse_dimacs(emit_dimacs(gen.instance));
    CHECK(reparsed == gen.instance);
    // parse . emit . parse is the identity on parsed instances
    CHECK(parse_dimacs(emit_dimacs(reparsed)) == reparsed);
  }
}

TEST_CASE("count_satisfied examples") {
  const Instance one = instance(3, {{1, 2, 3}});
  CHECK(count_satisfied(one, Assignment::from_bits("111"), Mode::nae) == 0);
  CHECK(count_satisfied(one, Assignment::from_bits("101"), Mode::nae) == 1);
  CHECK(count_satisfied(one, Assignment::from_bits("101"), Mode::sat) == 1);

  const Instance pair = instance(2, {{1, 2}, {-1, -2}});
  CHECK(count_satisfied(pair, Assignment::from_bits("10"), Mode::nae) == 2);
}

TEST_CASE("nae implies sat for every assignment") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gen = random_instance(8, 3, 12, GenMode::uniform, seed);
    for (const Assignment& alpha : all_assignments(8))
      CHECK(count_satisfied(gen.instance, alpha, Mode::nae) <=
            count_satisfied(gen.instance, alpha, Mode::sat));
  }
}

TEST_CASE("stats") {
  const Instance f = instance(5, {{1, 2, 3}, {4, 5}});
  const InstanceStats st = stats(f);
  CHECK(st.eta == Rational(5, 2));
  CHECK(st.per_length[2] == 1);
  CHECK(st.per_length[3] == 1);

  const Instance uniform = instance(4, {{1, 2, 3}, {2, 3, 4}});
  CHECK(stats(uniform).eta == Rational(3));

  const Instance occ = instance(3, {{1, 2}, {-1, 3}});
  CHECK(stats(occ).occurrence[1] == 2);

  CHECK_THROWS_AS(stats(Instance(3, {})), Error);

  // sum_i i*m_i equals total occurrence; eta invariant under reordering
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto gen = random_instance(9, 3, 14, GenMode::uniform, seed);
    const InstanceStats s1 = stats(gen.instance);
    std::int64_t weighted = 0;
    for (int len = 1; len <= s1.max_len(); ++len) weighted += len * s1.per_length[len];
    const std::int64_t occ_total = std::accumulate(s1.occurrence.begin(), s1.occurrence.end(), std::int64_t{0});
    CHECK(weighted == occ_total);

    std::vector<Clause> reversed(gen.instance.clauses().rbegin(), gen.instance.clauses().rend());
    CHECK(stats(Instance(9, std::move(reversed))).eta == s1.eta);
  }
}

TEST_CASE("satisfiable_subformula") {
  const Instance f = instance(2, {{1, 2}, {-1, -2}});
  const Assignment good = Assignment::from_bits("10");
  const Subformula all = satisfiable_subformula(f, good, Mode::nae);
  CHECK(all.weight == 2);
  CHECK(all.g == f);
  CHECK(*all.theta == stats(f).eta);

  const Assignment bad = Assignment::from_bits("11");
  const Subformula none = satisfiable_subformula(f, bad, Mode::nae);
  CHECK(none.weight == 0);
  CHECK(!none.theta.has_value());
}

TEST_CASE("subtau_variables markov bound") {
  const Rational deltas[] = {Rational(0), Rational(1, 2), Rational(9, 10)};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 8 + static_cast<int>(seed % 13);
    const auto gen = random_instance(n, 3, 2 * n, GenMode::uniform, seed);
    const Rational theta = stats(gen.instance).eta;

    std::vector<Rational> lambdas = {Rational(1), theta, 2 * theta};
    for (const Rational& d : deltas) lambdas.push_back(Rational(1) - d + theta);
    for (const Rational& lam : lambdas) {
      if (lam <= 0) continue;
      const auto b = subtau_variables(gen.instance, lam);
      // |B_tau| >= (1 - theta/lambda) * n
      const Rational bound = (Rational(1) - theta / lam) * n;
      CHECK(Rational(static_cast<long>(b.size())) >= bound);
    }
  }

  // very large lambda returns every variable
  const auto gen = random_instance(10, 3, 20, GenMode::uniform, 7);
  CHECK(subtau_variables(gen.instance, Rational(1000)).size() == 10);
}

TEST_CASE("random_instance determinism and planted mode") {
  const auto a = random_instance(10, 3, 20, GenMode::uniform, 1);
  const auto b = random_instance(10, 3, 20, GenMode::uniform, 1);
  CHECK(a.instance == b.instance);
  for (const Clause& c : a.instance.clauses()) CHECK(c.size() == 3);

  const auto planted = random_instance(12, 3, 30, GenMode::planted_nae, 42);
  REQUIRE(planted.planted.has_value());
  CHECK(count_satisfied(planted.instance, *planted.planted, Mode::nae) == 30);

  CHECK_THROWS_AS(random_instance(2, 3, 5, GenMode::uniform, 0), Error);
  CHECK_THROWS_AS(random_instance(5, 1, 5, GenMode::uniform, 0), Error);
}

TEST_CASE("planted comment extraction") {
  const auto gen = random_instance(6, 3, 8, GenMode::planted_nae, 5);
  const std::string text = "c planted " + gen.planted->to_bits() + "\n" + emit_dimacs(gen.instance);
  const auto planted = planted_from_dimacs(text);
  REQUIRE(planted.has_value());
  CHECK(*planted == *gen.planted);
  CHECK(!planted_from_dimacs(emit_dimacs(gen.instance)).has_value());
}

TEST_CASE("assignment packing and order") {
  Assignment a = Assignment::from_mask(4, 0b0101);
  CHECK(a.get(1));
  CHECK(!a.get(2));
  CHECK(a.get(3));
  CHECK(a.to_bits() == "1010");
  CHECK(Assignment::from_bits("1010") == a);
  CHECK(Assignment::mask_less(Assignment::from_mask(4, 3), Assignment::from_mask(4, 4)));
}
