#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/lp_solution.hpp"

namespace naesat::bounds {

using Real = long double;

inline constexpr Real default_omega = 2.3728639L;

// Named analytic quantities for one (k, delta, mode) query, plus a provenance
// tag ("computed" or "cited") per quantity.
struct BoundReport {
  int k = 0;
  std::optional<Real> delta;
  Mode mode = Mode::nae;
  std::map<std::string, Real> quantities;
  std::map<std::string, std::string> provenance;
};

// Base of the reference deterministic k-SAT bound, via the chain recurrence
// c_3 = 3^(log(4/3)/log(64/21)), c_k = (2^k-1)^nu * c_{k-1}^(1-k*nu).
Real liu_ck(int k);

// Exact closed form of the pair LP solution (lambda and pi per distance).
LpSolution lp_closed_form(int k);

struct DetBound {
  Real nu = 0;
  Real base = 0;  // c'_k
};

// Deterministic bound for the conjugate-pair solver; uses liu_ck(k-1) with
// the convention c_2 = 1.
DetBound nae_det_bound(int k);

// (2 - (2-2*delta)/(2k - k*delta))^n baseline approximation bound.
Real hirsch_base(int k, Real delta);

// Lower bound xi (sat) / xi' (nae) on s(alpha*)/m as a function of the
// average clause length eta. Exact rational.
Rational xi(int k, const Rational& eta, Mode mode);

// Worst-case average clause length of the maximal (NAE-)satisfiable
// subformula: the equality case of the eta-theta relation, clamped to <= k.
Rational theta_from_eta(int k, const Rational& eta, Mode mode);

// 2 - 2*(1-delta)/(k*(1/xi - delta)): walk success base with m/s(alpha*)
// worst-cased to 1/xi.
Real walk_base(int k, Real delta, Real xi_value);

// 2^(theta/(1 - delta + theta)): reciprocal random-guess success base.
Real guess_base(Real theta, Real delta);

struct SystemSolution {
  Real base = 0;      // gamma (sat) / gamma' (nae)
  Real eta_star = 0;  // crossing point (or forced endpoint)
  Real theta = 0;
  Real xi = 0;
  Real p_delta = 0;
  bool crossing = false;  // false: one curve dominates, min-base returned
};

// Solves the walk/guess balance system by bisection over eta. The walk base
// decreases in eta and the guess base increases (their success probabilities
// move the other way), so the worst case is their crossing when one exists.
SystemSolution solve_system(int k, Real delta, Mode mode);

// c^((1 - 2*(1-delta)*xi)^(1/k)); worst-case eta (xi = 1/2) when eta omitted.
Real reduce_solve_base(int k, Real delta, Real c, Mode mode,
                       std::optional<Rational> eta = std::nullopt);

// Base of the exact matrix-product engine where it applies (nae k <= 3,
// sat k <= 2), otherwise 2.
Real exact_engine_base(int k, Mode mode, Real omega = default_omega);

struct Fig1Row {
  int k = 0;
  Real this_work = 0;
  Real liu = 0;
  Real moser_scheder = 0;  // cited
  Real dantsin = 0;        // cited
  Real ppsz = 0;           // cited
};

// Deterministic-bound comparison table for k = 3..6; the first two columns
// are computed, the rest are cited constants.
std::vector<Fig1Row> fig1_table();
std::string fig1_csv();

struct CurvePoint {
  Real delta = 0;
  Real system_base = 0;
  Real reduce_base = 0;
  Real hirsch = 0;
  bool dominated = false;  // system_base <= hirsch
};

std::vector<CurvePoint> curves(int k, Mode mode, int grid_points, Real omega = default_omega);
std::string curves_csv(int k, Mode mode, int grid_points, Real omega = default_omega);

// Round up at the given number of decimals (presentation convention of the
// comparison tables).
Real round_up(Real x, int decimals);

// Assembles every quantity relevant to (k, delta, mode) into one report.
BoundReport report(int k, std::optional<Real> delta, Mode mode);

}  // namespace naesat::bounds
