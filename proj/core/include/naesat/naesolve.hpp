#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "naesat/covercode.hpp"
#include "naesat/formula.hpp"
#include "naesat/lp_solution.hpp"
#include "naesat/transform.hpp"

namespace naesat {

// nullopt = certified unsatisfiable.
using SolveResult = std::optional<Assignment>;

enum class DlsStrategy { covering_code, randomized_walk };

struct SolverConfig {
  Rational nu = Rational(1, 8);  // branching threshold; must satisfy 0 < nu < 1/k
  DlsStrategy dls_strategy = DlsStrategy::covering_code;
  int walk_restarts = 1000;
  Rational ball_radius_fraction = Rational(1, 4);  // in (0, 1/2]
  std::uint64_t seed = 0;

  // nu set to the analytic optimum for width-k instances.
  static SolverConfig defaults_for(int k);
  void validate(int k) const;
};

// Pair-local solution distribution pi over A = {0,1}^k \ {0^k, 1^k} together
// with the efficiency constant lambda it certifies.
struct PairDistribution {
  int k = 0;
  Rational lambda;
  std::vector<std::pair<std::uint32_t, Rational>> points;  // (pattern, probability), ascending

  static PairDistribution from_lp(const LpSolution& lp);
  static PairDistribution uniform(int k);
};

struct DistributionCheck {
  bool ok = true;
  std::string detail;  // violated constraint when !ok
};

// Exact verification of all pair-LP constraints (sum = 1, nonnegativity, and
// the lambda identity for every reference point).
DistributionCheck check_pair_distribution(const PairDistribution& dist);

std::uint32_t sample_pair_assignment(const PairDistribution& dist, Rng& rng);

struct SolveTrace {
  std::string engine;               // "2sat", "br", "dls-covering", "dls-walk"
  std::int64_t pair_count = 0;      // |P|
  std::int64_t branches = 0;        // pair assignments enumerated by br
  std::int64_t codewords = 0;       // covering codewords searched by dls
  std::int64_t restarts_used = 0;   // randomized dls restarts consumed
};

struct BrResult {
  bool solved = false;              // true: enumeration ran to an answer
  SolveResult assignment;           // valid when solved
  PairSet pairs;                    // valid when !solved
  std::int64_t branches = 0;
};

// Branching phase: greedily extracts a maximal independent pair set P; when
// |P| < nu*n, enumerates the (2^k - 2)^|P| pair-local assignments that avoid
// the all-equal patterns and solves each residual with the deterministic
// fallback chain. Otherwise hands P back for local search.
BrResult br(const Instance& conjugate_closed, const Rational& nu);

// Implication-graph 2-SAT decision (strongly connected components, linear
// time); accepts 1-clauses.
SolveResult solve_2sat(const Instance& instance);

// Complete backtracking search with unit propagation and two watched
// literals; branches on the lowest-index unassigned variable, true first.
SolveResult dpll(const Instance& instance);

// Local-search phase over a product covering code: one block per pair
// (codewords inside A, greedy weighted by pi) plus Hamming blocks of length
// <= 12 over the remaining variables; every codeword is searched to the
// code's combined radius, so the scan is exhaustive and may certify
// unsatisfiability. The randomized strategy walks from pi-seeded restarts and
// throws StrategyMisuse instead of claiming unsatisfiability.
SolveResult dls(const Instance& conjugate_closed, const PairSet& pairs, const SolverConfig& config,
                SolveTrace* trace = nullptr);

// Deterministic search of the radius-r Hamming ball around `center`:
// recursive branching on the literals of the first unsatisfied clause.
std::optional<Assignment> ball_search(const Instance& instance, const Assignment& center, int radius,
                                      Mode mode);

// Classic random walk: random start, then repeatedly flip a random variable
// of a random (NAE-)unsatisfied clause.
std::optional<Assignment> schoening(const Instance& instance, Mode mode, std::int64_t steps, Rng& rng);

// Full pipeline: conjugate closure, then br, then dls if pairs came back.
SolveResult solve_nae(const Instance& instance, const SolverConfig& config,
                      SolveTrace* trace = nullptr);

}  // namespace naesat
