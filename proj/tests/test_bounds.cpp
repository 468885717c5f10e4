#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "naesat/bounds.hpp"

using namespace naesat;
using bounds::Real;

namespace {
bool close(Real a, Real b, Real tol) { return std::fabs(static_cast<double>(a - b)) <= tol; }
}  // namespace

TEST_CASE("reference chain recurrence") {
  CHECK(close(bounds::round_up(bounds::liu_ck(3), 5), 1.32793L, 1e-9));
  CHECK(close(bounds::round_up(bounds::liu_ck(4), 5), 1.49857L, 1e-9));
  CHECK(close(bounds::round_up(bounds::liu_ck(5), 5), 1.59946L, 1e-9));
  CHECK(close(bounds::round_up(bounds::liu_ck(6), 5), 1.66646L, 1e-9));
}

TEST_CASE("pair-solver deterministic bound") {
  CHECK(close(bounds::round_up(bounds::nae_det_bound(3).base, 5), 1.32573L, 1e-9));
  CHECK(close(bounds::round_up(bounds::nae_det_bound(4).base, 5), 1.49706L, 1e-9));
  CHECK(close(bounds::round_up(bounds::nae_det_bound(5).base, 5), 1.59888L, 1e-9));
  CHECK(close(bounds::round_up(bounds::nae_det_bound(6).base, 5), 1.66624L, 1e-9));
}

TEST_CASE("strict improvement and nu range for every k") {
  for (int k = 3; k <= 16; ++k) {
    const auto det = bounds::nae_det_bound(k);
    CHECK(det.base < bounds::liu_ck(k));
    CHECK(det.nu > 0);
    CHECK(det.nu < 1.0L / static_cast<Real>(k));
  }
}

TEST_CASE("closed form lambda values and positivity precondition") {
  CHECK(bounds::lp_closed_form(3).lambda == Rational(7, 16));
  CHECK(bounds::lp_closed_form(3).pi_at(1) == Rational(1, 6));
  CHECK(bounds::lp_closed_form(4).lambda == Rational(82, 405));
  for (int k = 3; k <= 16; ++k) {
    // (2k-2)^k - 2(k-2)^k + (-2)^k > 0
    const Rational d = rat_pow(Rational(2 * k - 2), k) - 2 * rat_pow(Rational(k - 2), k) +
                       rat_pow(Rational(-2), k);
    CHECK(d > 0);
    Rational sum(0);
    const LpSolution lp = bounds::lp_closed_form(k);
    for (int y = 1; y <= k - 1; ++y) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), k, y);
      sum += Rational(b) * lp.pi_at(y);
    }
    CHECK(sum == 1);
  }
}

TEST_CASE("hirsch base") {
  CHECK(close(bounds::hirsch_base(3, 1.0L), 2.0L, 1e-12));
  CHECK(close(bounds::hirsch_base(3, 0.0L), 5.0L / 3.0L, 1e-12));
  CHECK(close(bounds::hirsch_base(3, 0.875L), 2.0L - 0.25L / 3.375L, 1e-12));
}

TEST_CASE("xi values") {
  CHECK(bounds::xi(2, Rational(2), Mode::nae) == Rational(1, 2));
  CHECK(bounds::xi(3, Rational(2), Mode::nae) == Rational(1, 2));
  CHECK(bounds::xi(3, Rational(5, 2), Mode::nae) == Rational(5, 8));  // eta/4
  CHECK(bounds::xi(4, Rational(3), Mode::nae) == Rational(11, 16));
  CHECK(bounds::xi(3, Rational(1), Mode::sat) == Rational(1, 2));
  CHECK_THROWS_AS(bounds::xi(3, Rational(5), Mode::nae), Error);
  CHECK_THROWS_AS(bounds::xi(3, Rational(1), Mode::nae), Error);
}

TEST_CASE("theta from eta") {
  CHECK(bounds::theta_from_eta(2, Rational(2), Mode::nae) == Rational(2));
  // 2/(theta'-2) = 2 + 1/2 -> theta' = 2.8
  CHECK(bounds::theta_from_eta(3, Rational(5, 2), Mode::nae) == Rational(14, 5));
  // sat: theta -> 1 as eta -> 1
  CHECK(bounds::theta_from_eta(3, Rational(1), Mode::sat) == Rational(1));
  const Rational near = bounds::theta_from_eta(3, Rational(101, 100), Mode::sat);
  CHECK(near > 1);
  CHECK(near < Rational(11, 10));
  // clamped at k
  CHECK(bounds::theta_from_eta(3, Rational(3), Mode::nae) == Rational(3));
}

TEST_CASE("walk and guess bases") {
  CHECK(close(bounds::walk_base(3, 1.0L, 0.5L), 2.0L, 1e-12));
  CHECK(close(bounds::walk_base(3, 0.9L, 0.5L), 2.0L - 0.1L / 1.65L, 1e-12));
  CHECK(close(bounds::guess_base(2.0L, 1.0L), 2.0L, 1e-12));
  CHECK(close(bounds::guess_base(2.0L, 0.5L), std::pow(2.0L, 0.8L), 1e-12));

  // the two algebraic forms of the walk base agree (away from the undefined
  // delta = xi = 1 corner, where the base is 2 by the vanishing numerator)
  for (int k = 2; k <= 6; ++k)
    for (int di = 0; di <= 10; ++di)
      for (int xi100 = 30; xi100 <= 100; xi100 += 7) {
        const Real delta = di / 10.0L;
        const Real xiv = xi100 / 100.0L;
        if (delta == 1.0L && xiv == 1.0L) {
          CHECK(close(bounds::walk_base(k, delta, xiv), 2.0L, 1e-12));
          continue;
        }
        const Real direct = bounds::walk_base(k, delta, xiv);
        const Real theorem_form =
            2.0L - (2.0L * xiv - 2.0L * xiv * delta) / (k - xiv * delta * k);
        CHECK(close(direct, theorem_form, 1e-12));
      }

  // monotonicity of the guess exponent
  Real prev = 0;
  for (int t = 10; t <= 40; ++t) {
    const Real g = bounds::guess_base(t / 10.0L, 0.5L);
    CHECK(g >= prev);
    prev = g;
  }
}

TEST_CASE("system solution") {
  // headline point
  const auto sys = bounds::solve_system(4, 0.9L, Mode::nae);
  CHECK(sys.crossing);
  CHECK(close(sys.base, 1.947L, 1e-3));

  // k=2 degenerate cases
  CHECK(close(bounds::solve_system(2, 1.0L, Mode::nae).base, 2.0L, 1e-12));
  const auto k2 = bounds::solve_system(2, 0.0L, Mode::nae);
  CHECK(!k2.crossing);
  CHECK(close(k2.base, 1.5L, 1e-12));  // min(2^(2/3), 3/2)

  // delta = 1 forces base 2 at every k
  for (int k = 2; k <= 6; ++k) CHECK(close(bounds::solve_system(k, 1.0L, Mode::nae).base, 2.0L, 1e-9));

  // sat-mode system is defined and dominated by 2
  const auto sat = bounds::solve_system(3, 0.9L, Mode::sat);
  CHECK(sat.base > 1);
  CHECK(sat.base < 2);
}

TEST_CASE("reduce-solve base and exact engine") {
  const Real c = bounds::exact_engine_base(3, Mode::nae);
  CHECK(close(bounds::round_up(c, 3), 1.731L, 1e-9));
  CHECK(close(bounds::reduce_solve_base(3, 0.9L, c, Mode::nae), 1.698L, 1e-3));
  CHECK(close(bounds::reduce_solve_base(3, 1.0L, c, Mode::nae), c, 1e-12));
  CHECK(bounds::exact_engine_base(4, Mode::nae) == 2.0L);
  CHECK(bounds::exact_engine_base(2, Mode::sat) < 2.0L);
  CHECK(bounds::exact_engine_base(3, Mode::sat) == 2.0L);
}

TEST_CASE("comparison table") {
  const auto rows = bounds::fig1_table();
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].k == 3);
  CHECK(close(rows[0].this_work, 1.32573L, 1e-9));
  CHECK(close(rows[0].liu, 1.32793L, 1e-9));
  CHECK(close(rows[0].moser_scheder, 1.33334L, 1e-9));
  CHECK(close(rows[0].dantsin, 1.50001L, 1e-9));
  CHECK(close(rows[0].ppsz, 1.30704L, 1e-9));
  CHECK(close(rows[2].this_work, 1.59888L, 1e-9));

  const std::string csv = bounds::fig1_csv();
  CHECK(csv.find("1.32573") != std::string::npos);
  CHECK(csv.find("k,this_work") == 0);
}

TEST_CASE("curves grid: dominance and monotonicity") {
  for (int k = 2; k <= 6; ++k) {
    const auto pts = bounds::curves(k, Mode::nae, 101);
    REQUIRE(pts.size() == 101);
    Real prev_sys = 0, prev_hirsch = 0;
    for (const auto& p : pts) {
      CHECK(p.dominated);
      CHECK(p.system_base <= p.hirsch + 1e-12L);
      CHECK(p.system_base >= prev_sys - 1e-12L);
      CHECK(p.hirsch >= prev_hirsch - 1e-12L);
      prev_sys = p.system_base;
      prev_hirsch = p.hirsch;
    }
    CHECK(close(pts.back().delta, 1.0L, 1e-12));
    CHECK(close(pts.back().system_base, 2.0L, 1e-9));
    CHECK(close(pts.back().hirsch, 2.0L, 1e-9));
  }
}

TEST_CASE("report carries the named quantities") {
  const auto rep = bounds::report(4, 0.9L, Mode::nae);
  CHECK(rep.quantities.count("nu"));
  CHECK(rep.quantities.count("lambda"));
  CHECK(rep.quantities.count("gamma_prime"));
  CHECK(rep.quantities.count("eta_star"));
  CHECK(rep.quantities.count("theta_prime"));
  CHECK(rep.quantities.count("xi_prime"));
  CHECK(rep.provenance.at("omega") == "cited");
  CHECK(close(rep.quantities.at("gamma_prime"), 1.947L, 1e-3));
}
