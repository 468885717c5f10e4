#include "naesat/transform.hpp"

#include <algorithm>
#include <unordered_set>

namespace naesat {

PairSet::PairSet(std::vector<ConjugatePair> pairs) : pairs_(std::move(pairs)) {
  std::unordered_set<int> seen;
  for (const ConjugatePair& p : pairs_) {
    if (p.clause.variables() != p.conj.variables())
      fail(errc::precondition_violated, "pair members must share their variable set");
    for (std::size_t i = 0; i < p.variables.size(); ++i)
      if (p.clause[static_cast<int>(i)].negated == p.conj[static_cast<int>(i)].negated)
        fail(errc::precondition_violated, "pair members must have opposite polarities");
    for (int v : p.variables)
      if (!seen.insert(v).second)
        fail(errc::precondition_violated,
             "pairs share variable " + std::to_string(v) + "; set is not independent");
  }
}

Clause conjugate(const Clause& clause) {
  std::vector<Literal> lits;
  lits.reserve(clause.literals().size());
  for (const Literal& l : clause.literals()) lits.push_back(l.negate());
  return Clause(std::move(lits));
}

Instance to_conjugate_instance(const Instance& instance) {
  if (instance.has_unit_clause())
    fail(errc::unit_clause_present, "1-clauses cannot be NAE-satisfied");
  std::unordered_set<Clause::Key, ClauseKeyHash> present;
  for (const Clause& c : instance.clauses()) present.insert(c.key());

  std::vector<Clause> out;
  out.reserve(instance.clauses().size() * 2);
  for (const Clause& c : instance.clauses()) {
    out.push_back(c);
    Clause twin = conjugate(c);
    if (present.insert(twin.key()).second) out.push_back(std::move(twin));
  }
  return Instance(instance.num_vars(), std::move(out));
}

PairSet greedy_pairs(const Instance& instance) {
  std::unordered_set<Clause::Key, ClauseKeyHash> present;
  for (const Clause& c : instance.clauses()) present.insert(c.key());

  std::vector<bool> used(static_cast<std::size_t>(instance.num_vars()) + 1, false);
  std::vector<ConjugatePair> picked;
  for (const Clause& c : instance.clauses()) {
    bool free = true;
    for (const Literal& l : c.literals())
      if (used[static_cast<std::size_t>(l.var)]) {
        free = false;
        break;
      }
    if (!free) continue;
    Clause twin = conjugate(c);
    if (!present.count(twin.key())) continue;
    for (const Literal& l : c.literals()) used[static_cast<std::size_t>(l.var)] = true;
    picked.emplace_back(c, std::move(twin));
  }
  return PairSet(std::move(picked));
}

std::optional<Instance> fix_and_simplify(const Instance& instance, const PartialAssignment& partial) {
  for (const auto& [var, value] : partial.entries()) {
    (void)value;
    if (var < 1 || var > instance.num_vars())
      fail(errc::variable_out_of_range, "fixed variable " + std::to_string(var) + " not in instance");
  }
  std::vector<Clause> out;
  out.reserve(instance.clauses().size());
  for (const Clause& c : instance.clauses()) {
    bool satisfied = false;
    std::vector<Literal> rest;
    rest.reserve(c.literals().size());
    for (const Literal& l : c.literals()) {
      if (auto v = partial.get(l.var)) {
        if (l.value_under(*v)) {
          satisfied = true;
          break;
        }
        continue;  // false literal dropped
      }
      rest.push_back(l);
    }
    if (satisfied) continue;
    if (rest.empty()) return std::nullopt;
    out.push_back(Clause(std::move(rest)));
  }
  return Instance(instance.num_vars(), std::move(out));
}

}  // namespace naesat
