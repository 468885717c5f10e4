#include "naesat/approx.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "detail/walk_state.hpp"
#include "naesat/bounds.hpp"
#include "naesat/oracle.hpp"
#include "naesat/williams.hpp"

namespace naesat {

Assignment random_walk(const Instance& instance, Mode mode, Rng& rng, std::int64_t steps) {
  if (mode == Mode::nae && instance.has_unit_clause())
    fail(errc::unit_clause_present, "1-clauses cannot be NAE-satisfied");
  if (steps < 0) steps = 3LL * instance.num_vars();

  detail::WalkState state(instance, mode, detail::random_assignment(instance.num_vars(), rng));
  Assignment best = state.assignment();
  std::int64_t best_score = state.satisfied_count();
  for (std::int64_t s = 0; s < steps; ++s) {
    if (state.satisfied_count() > best_score) {
      best_score = state.satisfied_count();
      best = state.assignment();
    }
    if (state.all_satisfied()) break;
    const int ci = state.unsat_at(static_cast<std::size_t>(rng.below(state.unsat_count())));
    const Clause& c = instance.clauses()[static_cast<std::size_t>(ci)];
    state.flip(c[static_cast<int>(rng.below(static_cast<std::uint64_t>(c.size())))].var);
  }
  if (state.satisfied_count() > best_score) best = state.assignment();
  return best;
}

ApproxResult random_walk_repeat(const Instance& instance, Mode mode, double delta, int restarts,
                                std::uint64_t seed, std::optional<std::int64_t> oracle_optimum,
                                int threads) {
  if (restarts < 1) fail(errc::infeasible_parameters, "need at least one restart");

  struct Best {
    std::int64_t score = -1;
    Assignment alpha;
  };
  auto run_range = [&](int begin, int end) {
    Best best;
    for (int r = begin; r < end; ++r) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
      Assignment alpha = random_walk(instance, mode, rng);
      const std::int64_t score = count_satisfied(instance, alpha, mode);
      if (score > best.score ||
          (score == best.score && Assignment::mask_less(alpha, best.alpha))) {
        best.score = score;
        best.alpha = std::move(alpha);
      }
    }
    return best;
  };

  Best best;
  if (threads <= 1 || restarts < 16) {
    best = run_range(0, restarts);
  } else {
    const int t = std::min(threads, restarts);
    std::vector<Best> partial(static_cast<std::size_t>(t));
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) {
      const int begin = restarts * i / t;
      const int end = restarts * (i + 1) / t;
      pool.emplace_back([&, i, begin, end] { partial[static_cast<std::size_t>(i)] = run_range(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (Best& b : partial)
      if (b.score > best.score ||
          (b.score == best.score && b.score >= 0 && Assignment::mask_less(b.alpha, best.alpha)))
        best = std::move(b);
  }

  ApproxResult out;
  out.assignment = best.alpha;
  out.achieved = best.score;
  out.trace.restarts = restarts;
  if (oracle_optimum && *oracle_optimum > 0) {
    Rational ratio(best.score, *oracle_optimum);
    ratio.canonicalize();
    out.ratio_vs_oracle = ratio;
    out.delta_achieved = to_double(ratio) >= delta;
  }
  return out;
}

std::int64_t restarts_for_probability(double probability, double safety) {
  if (!(probability > 0) || probability > 1)
    fail(errc::infeasible_parameters, "probability must lie in (0, 1]");
  return static_cast<std::int64_t>(std::ceil(safety / probability));
}

int choose_t(int n, int k, double delta, const Rational& eta, Mode mode) {
  if (delta < 0 || delta > 1) fail(errc::infeasible_parameters, "delta must lie in [0, 1]");
  const long double xi_value = to_long_double(bounds::xi(k, eta, mode));
  const long double x = 1.0L - (1.0L - static_cast<long double>(delta)) * xi_value;
  const long double inner = 2.0L * x - 1.0L;
  int t;
  if (inner <= 0) {
    t = n - 1;  // the bound degenerates; eliminate everything we can
  } else {
    const long double frac = 1.0L - std::pow(inner, 1.0L / static_cast<long double>(k));
    t = static_cast<int>(std::floor(frac * static_cast<long double>(n)));
  }
  return std::clamp(t, 0, n - 1);
}

namespace {

// Per-clause conditional satisfaction probability state under "assigned
// variables fixed, remaining eliminated variables uniform".
struct ClauseState {
  int unassigned = 0;
  bool any_true = false;
  bool any_false = false;

  Rational expectation(Mode mode) const {
    if (any_true && any_false) return Rational(1);
    const Rational half_pow = rat_pow(Rational(1, 2), static_cast<unsigned long>(unassigned));
    if (mode == Mode::sat) {
      if (any_true) return Rational(1);
      return Rational(1) - half_pow;  // all fixed literals false
    }
    if (unassigned == 0) return Rational(0);  // all-equal and complete
    // P(nae) = 1 - P(all true) - P(all false)
    Rational p(1);
    if (!any_false) p -= half_pow;
    if (!any_true) p -= half_pow;
    return p;
  }
};

}  // namespace

PartialAssignment cond_prob_complete(const Instance& fe, const std::vector<int>& ve,
                                     const PartialAssignment& alpha1, Mode mode) {
  std::vector<bool> in_ve(static_cast<std::size_t>(fe.num_vars()) + 1, false);
  for (int v : ve) {
    if (v < 1 || v > fe.num_vars()) fail(errc::variable_out_of_range, "eliminated variable out of range");
    in_ve[static_cast<std::size_t>(v)] = true;
  }

  std::vector<ClauseState> states(fe.clauses().size());
  std::vector<std::vector<std::pair<int, bool>>> touching(
      static_cast<std::size_t>(fe.num_vars()) + 1);  // var -> (clause, negated)
  for (std::size_t ci = 0; ci < fe.clauses().size(); ++ci) {
    const Clause& c = fe.clauses()[ci];
    bool has_ve = false;
    for (const Literal& l : c.literals()) {
      if (in_ve[static_cast<std::size_t>(l.var)]) {
        has_ve = true;
        states[ci].unassigned++;
        touching[static_cast<std::size_t>(l.var)].push_back({static_cast<int>(ci), l.negated});
      } else {
        const auto fixed = alpha1.get(l.var);
        if (!fixed)
          fail(errc::precondition_violated,
               "variable " + std::to_string(l.var) + " is neither eliminated nor fixed");
        if (l.value_under(*fixed))
          states[ci].any_true = true;
        else
          states[ci].any_false = true;
      }
    }
    if (!has_ve)
      fail(errc::precondition_violated, "an eliminated clause contains no eliminated variable");
  }

  std::vector<int> order(ve);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());

  PartialAssignment out;
  for (int v : order) {
    // Expectation delta of setting v to a given value, over clauses touching v.
    Rational gain_true(0), gain_false(0);
    for (const auto& [ci, negated] : touching[static_cast<std::size_t>(v)]) {
      const ClauseState& st = states[static_cast<std::size_t>(ci)];
      const Rational before = st.expectation(mode);
      ClauseState if_true = st, if_false = st;
      if_true.unassigned--;
      if_false.unassigned--;
      (negated ? if_true.any_false : if_true.any_true) = true;
      (negated ? if_false.any_true : if_false.any_false) = true;
      gain_true += if_true.expectation(mode) - before;
      gain_false += if_false.expectation(mode) - before;
    }
    const bool value = gain_true > gain_false;  // ties resolve to false
    out.assign(v, value);
    for (const auto& [ci, negated] : touching[static_cast<std::size_t>(v)]) {
      ClauseState& st = states[static_cast<std::size_t>(ci)];
      st.unassigned--;
      const bool lit_true = negated ? !value : value;
      (lit_true ? st.any_true : st.any_false) = true;
    }
  }
  return out;
}

ApproxResult reduce_solve(const Instance& instance, Mode mode, double delta,
                          const ReduceSolveOptions& options) {
  if (delta < 0 || delta > 1) fail(errc::infeasible_parameters, "delta must lie in [0, 1]");
  if (mode == Mode::nae && instance.has_unit_clause())
    fail(errc::unit_clause_present, "1-clauses cannot be NAE-satisfied");

  const int n = instance.num_vars();
  ApproxResult out;
  if (instance.empty()) {
    out.assignment = Assignment(n);
    out.ratio_vs_oracle = Rational(1);
    out.delta_achieved = true;
    return out;
  }

  const int k = instance.max_len();
  int t;
  if (options.t_override) {
    t = *options.t_override;
    if (t < 0 || t >= n) fail(errc::infeasible_t, "need 0 <= t < n");
  } else {
    t = choose_t(n, k, delta, stats(instance).eta, mode);
  }

  // Lowest-occurrence elimination (ties to the smallest index); a variable
  // with no remaining occurrence still counts and eliminates nothing.
  std::vector<bool> clause_alive(instance.clauses().size(), true);
  std::vector<bool> eliminated(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::int64_t> occ(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::vector<int>> occ_clauses(static_cast<std::size_t>(n) + 1);
  for (std::size_t ci = 0; ci < instance.clauses().size(); ++ci)
    for (const Literal& l : instance.clauses()[ci].literals()) {
      occ[static_cast<std::size_t>(l.var)]++;
      occ_clauses[static_cast<std::size_t>(l.var)].push_back(static_cast<int>(ci));
    }

  std::int64_t alive = instance.clause_count();
  std::vector<int> ve;
  std::vector<int> fe_indices;
  for (int step = 0; step < t; ++step) {
    int chosen = 0;
    std::int64_t best_occ = -1;
    for (int v = 1; v <= n; ++v) {
      if (eliminated[static_cast<std::size_t>(v)]) continue;
      if (best_occ < 0 || occ[static_cast<std::size_t>(v)] < best_occ) {
        best_occ = occ[static_cast<std::size_t>(v)];
        chosen = v;
      }
    }
    out.trace.steps.push_back({alive, best_occ});
    eliminated[static_cast<std::size_t>(chosen)] = true;
    ve.push_back(chosen);
    for (int ci : occ_clauses[static_cast<std::size_t>(chosen)]) {
      if (!clause_alive[static_cast<std::size_t>(ci)]) continue;
      clause_alive[static_cast<std::size_t>(ci)] = false;
      --alive;
      fe_indices.push_back(ci);
      for (const Literal& l : instance.clauses()[static_cast<std::size_t>(ci)].literals())
        occ[static_cast<std::size_t>(l.var)]--;
    }
  }

  // Residual formula on the surviving variables, renumbered compactly.
  std::vector<int> residual_vars;
  std::vector<int> to_compact(static_cast<std::size_t>(n) + 1, 0);
  for (int v = 1; v <= n; ++v)
    if (!eliminated[static_cast<std::size_t>(v)]) {
      residual_vars.push_back(v);
      to_compact[static_cast<std::size_t>(v)] = static_cast<int>(residual_vars.size());
    }
  std::vector<Clause> residual_clauses;
  for (std::size_t ci = 0; ci < instance.clauses().size(); ++ci) {
    if (!clause_alive[ci]) continue;
    std::vector<Literal> lits;
    for (const Literal& l : instance.clauses()[ci].literals())
      lits.emplace_back(to_compact[static_cast<std::size_t>(l.var)], l.negated);
    residual_clauses.push_back(Clause(std::move(lits)));
  }
  const Instance residual(static_cast<int>(residual_vars.size()), std::move(residual_clauses));

  // Exact solve of the residual.
  MaxResult exact;
  if (residual.empty()) {
    exact = MaxResult{0, Assignment(residual.num_vars())};
  } else if ((mode == Mode::nae && residual.max_len() <= 3) ||
             (mode == Mode::sat && residual.max_len() <= 2)) {
    exact = exact_max(residual, mode, options.matmul);
  } else if (residual.num_vars() <= options.oracle_fallback_max_vars) {
    OracleLimits limits;
    limits.optimize_max_vars = options.oracle_fallback_max_vars;
    exact = brute_max(residual, mode, limits);
  } else {
    fail(errc::residual_too_long,
         "no exact engine applies: residual has " + std::to_string(residual.max_len()) +
             "-clauses over " + std::to_string(residual.num_vars()) +
             " variables; lower t, raise the oracle limit, or shorten clauses");
  }

  PartialAssignment alpha1;
  for (std::size_t i = 0; i < residual_vars.size(); ++i)
    alpha1.assign(residual_vars[i], exact.assignment.get(static_cast<int>(i) + 1));

  // Completion on the eliminated variables.
  std::vector<Clause> fe_clauses;
  fe_clauses.reserve(fe_indices.size());
  for (int ci : fe_indices) fe_clauses.push_back(instance.clauses()[static_cast<std::size_t>(ci)]);
  const Instance fe(n, std::move(fe_clauses));

  PartialAssignment alpha2;
  if (options.randomized_completion) {
    Rng rng(options.seed);
    for (int v : ve) alpha2.assign(v, rng.coin());
  } else if (!fe.empty()) {
    alpha2 = cond_prob_complete(fe, ve, alpha1, mode);
  } else {
    for (int v : ve) alpha2.assign(v, false);
  }

  Assignment alpha(n);
  for (const auto& [v, value] : alpha1.entries()) alpha.set(v, value);
  for (const auto& [v, value] : alpha2.entries()) alpha.set(v, value);
  for (int v : ve)
    if (!alpha2.contains(v)) alpha.set(v, false);  // eliminated but untouched by F_e

  out.assignment = alpha;
  out.achieved = count_satisfied(instance, alpha, mode);
  out.trace.t = t;
  out.trace.eliminated_vars = static_cast<int>(ve.size());
  out.trace.eliminated_clauses = static_cast<std::int64_t>(fe_indices.size());
  out.trace.residual_optimum = exact.optimum;
  out.trace.fe_satisfied = fe.empty() ? 0 : count_satisfied(fe, alpha, mode);
  if (options.oracle_optimum && *options.oracle_optimum > 0) {
    Rational ratio(out.achieved, *options.oracle_optimum);
    ratio.canonicalize();
    out.ratio_vs_oracle = ratio;
    out.delta_achieved = to_double(ratio) >= delta;
  }
  return out;
}

}  // namespace naesat
