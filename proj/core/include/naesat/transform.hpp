#pragma once

#include <optional>
#include <vector>

#include "naesat/formula.hpp"

namespace naesat {

// A clause together with its polarity-flipped twin over the same variables.
// An assignment NAE-satisfies the clause iff it satisfies both members.
struct ConjugatePair {
  Clause clause;
  Clause conj;
  std::vector<int> variables;  // sorted, shared by both members

  ConjugatePair(Clause c, Clause j)
      : clause(std::move(c)), conj(std::move(j)), variables(clause.variables()) {}
  int length() const { return clause.size(); }
};

// Pairwise variable-disjoint conjugate pairs.
class PairSet {
 public:
  PairSet() = default;
  explicit PairSet(std::vector<ConjugatePair> pairs);

  const std::vector<ConjugatePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const ConjugatePair& operator[](std::size_t i) const { return pairs_[i]; }

 private:
  std::vector<ConjugatePair> pairs_;
};

Clause conjugate(const Clause& clause);

// Adds the conjugate of every clause (inserted right after its source clause
// unless already present). The result is satisfiable iff the input is
// NAE-satisfiable; rejects 1-clauses.
Instance to_conjugate_instance(const Instance& instance);

// Maximal set of independent conjugate pairs, greedy in input clause order.
PairSet greedy_pairs(const Instance& instance);

// Removes satisfied clauses and false literals; indices are kept stable.
// Returns nullopt when some clause becomes empty (conflict).
std::optional<Instance> fix_and_simplify(const Instance& instance, const PartialAssignment& partial);

}  // namespace naesat
