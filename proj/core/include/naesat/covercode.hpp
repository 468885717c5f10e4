#pragma once

#include <cstdint>
#include <vector>

#include "naesat/lp_solution.hpp"

namespace naesat {

// Greedy covering code over {0,1}^len: every point of the block space lies
// within Hamming distance `radius` of some codeword. Deterministic; results
// are cached per (len, radius).
const std::vector<std::uint32_t>& hamming_code(int len, int radius);

// Greedy covering code over the pair solution space A = {0,1}^k \ {0^k, 1^k}
// (codewords and covered points both restricted to A). Candidates are chosen
// by largest uncovered pi-weight; pass nullptr for uniform weights.
std::vector<std::uint32_t> pair_code(int k, int radius, const LpSolution* dist);

// True when every point of the universe is within `radius` of some codeword.
bool code_covers(const std::vector<std::uint32_t>& codewords, int len, int radius,
                 bool restrict_to_pair_space);

}  // namespace naesat
