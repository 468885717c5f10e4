#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/matmul.hpp"

namespace naesat {

struct ApproxTrace {
  int t = 0;                       // elimination rounds
  std::int64_t eliminated_clauses = 0;  // |F_e|
  int eliminated_vars = 0;              // |V_e|
  std::vector<std::pair<std::int64_t, std::int64_t>> steps;  // (clauses before step, occurrence chosen)
  std::int64_t fe_satisfied = 0;        // F_e clauses satisfied by the returned assignment
  std::int64_t residual_optimum = 0;    // exact optimum of the residual formula
  int restarts = 0;                     // walk restarts performed
};

struct ApproxResult {
  Assignment assignment;
  std::int64_t achieved = 0;                 // count_satisfied(F, assignment, mode)
  std::optional<Rational> ratio_vs_oracle;   // achieved / optimum, when the optimum is known
  std::optional<bool> delta_achieved;        // ratio >= delta, when the optimum is known
  ApproxTrace trace;
};

// One best-so-far tracking walk; steps < 0 means the 3n default.
Assignment random_walk(const Instance& instance, Mode mode, Rng& rng, std::int64_t steps = -1);

// Independent restarts with per-restart derived seeds; the best result wins
// (score, then packed-order assignment), so the outcome does not depend on
// the thread count.
ApproxResult random_walk_repeat(const Instance& instance, Mode mode, double delta, int restarts,
                                std::uint64_t seed,
                                std::optional<std::int64_t> oracle_optimum = std::nullopt,
                                int threads = 1);

// ceil(safety / p) restarts for a per-run success probability lower bound p.
std::int64_t restarts_for_probability(double probability, double safety = 20.0);

// Elimination depth t = floor((1 - (2x-1)^(1/k)) * n) with x = 1 - (1-delta)*xi,
// clamped to [0, n-1]; the vanished o(n) slack makes the delta guarantee
// asymptotic only.
int choose_t(int n, int k, double delta, const Rational& eta, Mode mode);

// Greedy derandomized completion on the eliminated variables: assigns them in
// index order, each choice maximizing the exact conditional expectation of
// (NAE-)satisfied F_e clauses. Final count is at least ceil(|F_e| / 2).
PartialAssignment cond_prob_complete(const Instance& fe, const std::vector<int>& ve,
                                     const PartialAssignment& alpha1, Mode mode);

struct ReduceSolveOptions {
  std::optional<int> t_override;
  std::optional<std::int64_t> oracle_optimum;
  MatMulKind matmul = MatMulKind::naive;
  bool randomized_completion = false;  // statistics variant of the completion step
  std::uint64_t seed = 0;
  int oracle_fallback_max_vars = 24;   // brute-force residual solve when the
                                       // matrix-product engine does not apply
};

// Lowest-occurrence elimination, exact residual solve, derandomized
// completion.
ApproxResult reduce_solve(const Instance& instance, Mode mode, double delta,
                          const ReduceSolveOptions& options = {});

}  // namespace naesat
