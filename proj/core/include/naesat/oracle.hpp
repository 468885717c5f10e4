#pragma once

#include <cstdint>
#include <optional>

#include "naesat/formula.hpp"
#include "naesat/lp_solution.hpp"

namespace naesat {

struct OracleLimits {
  int decide_max_vars = 30;
  int optimize_max_vars = 24;
};

// Exhaustive decision in packed-assignment order (variable 1 = least
// significant bit); returns the first satisfying assignment, or nullopt.
// Evaluation is bit-parallel over 64 assignments at a time.
std::optional<Assignment> brute_decide(const Instance& instance, Mode mode,
                                       const OracleLimits& limits = {}, int threads = 1);

struct MaxResult {
  std::int64_t optimum = 0;
  Assignment assignment;  // packed-order smallest argmax
};

MaxResult brute_max(const Instance& instance, Mode mode, const OracleLimits& limits = {},
                    int threads = 1);

// Independent derivation of the pair LP solution: assuming pi depends only on
// the distance from the all-zeros point, the equality constraints reduce to a
// small rational linear system solved by exact Gaussian elimination.
LpSolution lp_solve_symmetric(int k);

}  // namespace naesat
