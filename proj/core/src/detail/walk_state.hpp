#pragma once

#include <vector>

#include "naesat/formula.hpp"
#include "naesat/rng.hpp"

namespace naesat::detail {

// Incremental clause-satisfaction bookkeeping for local search: per-clause
// true-literal counts, occurrence lists, and a swap-removal unsatisfied set.
class WalkState {
 public:
  WalkState(const Instance& instance, Mode mode, Assignment start)
      : instance_(&instance), mode_(mode), alpha_(std::move(start)) {
    const auto& clauses = instance.clauses();
    true_count_.assign(clauses.size(), 0);
    pos_in_unsat_.assign(clauses.size(), -1);
    occ_.assign(static_cast<std::size_t>(instance.num_vars()) + 1, {});
    for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
      for (const Literal& l : clauses[ci].literals()) {
        occ_[static_cast<std::size_t>(l.var)].push_back(static_cast<int>(ci));
        if (l.value_under(alpha_.get(l.var))) ++true_count_[ci];
      }
      if (is_unsat(static_cast<int>(ci))) push_unsat(static_cast<int>(ci));
    }
  }

  const Assignment& assignment() const { return alpha_; }
  bool all_satisfied() const { return unsat_.empty(); }
  std::size_t unsat_count() const { return unsat_.size(); }
  std::int64_t satisfied_count() const {
    return static_cast<std::int64_t>(true_count_.size() - unsat_.size());
  }
  int unsat_at(std::size_t i) const { return unsat_[i]; }
  int first_unsat() const { return lowest_unsat(); }

  void flip(int var) {
    alpha_.flip(var);
    const bool value = alpha_.get(var);
    for (int ci : occ_[static_cast<std::size_t>(var)]) {
      const Clause& c = (*instance_).clauses()[static_cast<std::size_t>(ci)];
      bool lit_value = false;
      for (const Literal& l : c.literals())
        if (l.var == var) {
          lit_value = l.value_under(value);
          break;
        }
      const bool was_unsat = is_unsat(ci);
      true_count_[static_cast<std::size_t>(ci)] += lit_value ? 1 : -1;
      const bool now_unsat = is_unsat(ci);
      if (was_unsat && !now_unsat) pop_unsat(ci);
      if (!was_unsat && now_unsat) push_unsat(ci);
    }
  }

 private:
  bool is_unsat(int ci) const {
    const auto i = static_cast<std::size_t>(ci);
    const int t = true_count_[i];
    if (mode_ == Mode::sat) return t == 0;
    return t == 0 || t == (*instance_).clauses()[i].size();
  }

  void push_unsat(int ci) {
    pos_in_unsat_[static_cast<std::size_t>(ci)] = static_cast<int>(unsat_.size());
    unsat_.push_back(ci);
  }

  void pop_unsat(int ci) {
    const int pos = pos_in_unsat_[static_cast<std::size_t>(ci)];
    const int last = unsat_.back();
    unsat_[static_cast<std::size_t>(pos)] = last;
    pos_in_unsat_[static_cast<std::size_t>(last)] = pos;
    unsat_.pop_back();
    pos_in_unsat_[static_cast<std::size_t>(ci)] = -1;
  }

  int lowest_unsat() const {
    int best = -1;
    for (int ci : unsat_)
      if (best < 0 || ci < best) best = ci;
    return best;
  }

  const Instance* instance_;
  Mode mode_;
  Assignment alpha_;
  std::vector<int> true_count_;
  std::vector<int> pos_in_unsat_;
  std::vector<int> unsat_;
  std::vector<std::vector<int>> occ_;
};

inline Assignment random_assignment(int n, Rng& rng) {
  Assignment a(n);
  for (int v = 1; v <= n; ++v) a.set(v, rng.coin());
  return a;
}

}  // namespace naesat::detail
