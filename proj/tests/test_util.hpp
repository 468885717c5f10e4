#pragma once

#include <cstdint>
#include <vector>

#include "naesat/formula.hpp"

namespace naesat::testutil {

inline Clause clause(std::initializer_list<int> dimacs_lits) {
  std::vector<Literal> lits;
  for (int code : dimacs_lits) lits.push_back(Literal::from_dimacs(code));
  return Clause(std::move(lits));
}

inline Instance instance(int n, std::initializer_list<std::initializer_list<int>> clause_lits) {
  std::vector<Clause> cs;
  for (const auto& c : clause_lits) cs.push_back(clause(c));
  return Instance(n, std::move(cs));
}

// All 2^n assignments of a small instance, in packed order.
inline std::vector<Assignment> all_assignments(int n) {
  std::vector<Assignment> out;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) out.push_back(Assignment::from_mask(n, mask));
  return out;
}

}  // namespace naesat::testutil
