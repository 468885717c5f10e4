#include "naesat/naesolve.hpp"

#include <algorithm>
#include <bit>

#include "detail/walk_state.hpp"
#include "naesat/bounds.hpp"

namespace naesat {

SolverConfig SolverConfig::defaults_for(int k) {
  SolverConfig cfg;
  if (k >= 3 && k <= 16) {
    cfg.nu = Rational(static_cast<double>(bounds::nae_det_bound(k).nu));
    cfg.nu.canonicalize();
  } else {
    cfg.nu = Rational(1, 4);
  }
  return cfg;
}

void SolverConfig::validate(int k) const {
  if (k >= 2 && !(nu > 0 && nu < Rational(1, k)))
    fail(errc::infeasible_parameters, "nu must lie in (0, 1/k)");
  if (!(ball_radius_fraction > 0 && ball_radius_fraction <= Rational(1, 2)))
    fail(errc::infeasible_parameters, "ball radius fraction must lie in (0, 1/2]");
  if (walk_restarts < 1) fail(errc::infeasible_parameters, "walk restarts must be >= 1");
}

PairDistribution PairDistribution::from_lp(const LpSolution& lp) {
  PairDistribution d;
  d.k = lp.k;
  d.lambda = lp.lambda;
  const std::uint32_t all_ones = (1u << lp.k) - 1;
  for (std::uint32_t a = 1; a < all_ones; ++a)
    d.points.emplace_back(a, lp.pi_at(std::popcount(a)));
  return d;
}

PairDistribution PairDistribution::uniform(int k) {
  if (k < 2 || k > 16) fail(errc::infeasible_parameters, "pair length must be in [2, 16]");
  PairDistribution d;
  d.k = k;
  const std::uint32_t all_ones = (1u << k) - 1;
  const long count = static_cast<long>(all_ones) - 1;
  for (std::uint32_t a = 1; a < all_ones; ++a) d.points.emplace_back(a, Rational(1, count));
  // lambda = sum of pi(a) * (1/(k-1))^d(a, a*) for any a*; constant only for
  // the degenerate k = 2 space, which is the intended use.
  const Rational r(1, k - 1);
  Rational lam(0);
  for (const auto& [a, p] : d.points)
    lam += p * rat_pow(r, static_cast<unsigned long>(std::popcount(a ^ d.points.front().first)));
  d.lambda = lam;
  return d;
}

DistributionCheck check_pair_distribution(const PairDistribution& dist) {
  DistributionCheck out;
  const std::uint32_t all_ones = (1u << dist.k) - 1;
  Rational sum(0);
  for (const auto& [a, p] : dist.points) {
    if (a == 0 || a == all_ones) {
      out.ok = false;
      out.detail = "support contains an all-equal pattern";
      return out;
    }
    if (p < 0) {
      out.ok = false;
      out.detail = "negative probability at pattern " + std::to_string(a);
      return out;
    }
    sum += p;
  }
  if (sum != 1) {
    out.ok = false;
    out.detail = "probabilities sum to " + sum.get_str() + ", expected 1";
    return out;
  }
  const Rational r(1, dist.k - 1);
  for (const auto& [astar, pstar] : dist.points) {
    (void)pstar;
    Rational lhs(0);
    for (const auto& [a, p] : dist.points)
      lhs += p * rat_pow(r, static_cast<unsigned long>(std::popcount(a ^ astar)));
    if (lhs != dist.lambda) {
      out.ok = false;
      out.detail = "lambda identity violated at a* pattern " + std::to_string(astar) + ": " +
                   lhs.get_str() + " != " + dist.lambda.get_str();
      return out;
    }
  }
  return out;
}

std::uint32_t sample_pair_assignment(const PairDistribution& dist, Rng& rng) {
  if (dist.points.empty()) fail(errc::precondition_violated, "empty distribution");
  const double u = rng.unit();
  double cum = 0;
  for (const auto& [a, p] : dist.points) {
    cum += to_double(p);
    if (u < cum) return a;
  }
  return dist.points.back().first;
}

namespace {

// Local patterns of one pair: bit j holds the value of literal j of the
// scanned clause member, so 0^k and 1^k are exactly the all-equal patterns.
void apply_pair_pattern(const ConjugatePair& pair, std::uint32_t pattern, PartialAssignment& out) {
  const auto& lits = pair.clause.literals();
  for (std::size_t j = 0; j < lits.size(); ++j) {
    const bool lit_value = (pattern >> j) & 1u;
    out.assign(lits[j].var, lits[j].negated ? !lit_value : lit_value);
  }
}

void apply_pair_pattern(const ConjugatePair& pair, std::uint32_t pattern, Assignment& out) {
  const auto& lits = pair.clause.literals();
  for (std::size_t j = 0; j < lits.size(); ++j) {
    const bool lit_value = (pattern >> j) & 1u;
    out.set(lits[j].var, lits[j].negated ? !lit_value : lit_value);
  }
}

SolveResult fallback_solve(const Instance& residual) {
  if (residual.max_len() <= 2) return solve_2sat(residual);
  return dpll(residual);
}

}  // namespace

BrResult br(const Instance& conjugate_closed, const Rational& nu) {
  BrResult out;
  out.pairs = greedy_pairs(conjugate_closed);
  const Rational threshold = nu * conjugate_closed.num_vars();
  if (Rational(static_cast<long>(out.pairs.size())) >= threshold) return out;
  out.solved = true;

  const std::size_t np = out.pairs.size();
  std::vector<std::uint32_t> limit(np), pattern(np, 1);
  for (std::size_t i = 0; i < np; ++i) {
    if (out.pairs[i].length() > 20) fail(errc::too_large, "pair enumeration limited to length 20");
    limit[i] = (1u << out.pairs[i].length()) - 1;  // patterns run over [1, 2^k - 2]
  }

  if (np == 0) {
    out.branches = 1;
    out.assignment = fallback_solve(conjugate_closed);
    return out;
  }

  // Odometer over pair patterns, first pair most significant.
  while (true) {
    ++out.branches;
    PartialAssignment fixed;
    for (std::size_t i = 0; i < np; ++i) apply_pair_pattern(out.pairs[i], pattern[i], fixed);
    if (auto residual = fix_and_simplify(conjugate_closed, fixed)) {
      if (auto solution = fallback_solve(*residual)) {
        Assignment merged = *solution;
        for (std::size_t i = 0; i < np; ++i) apply_pair_pattern(out.pairs[i], pattern[i], merged);
        out.assignment = merged;
        return out;
      }
    }
    // advance odometer
    std::size_t pos = np;
    while (pos > 0) {
      --pos;
      if (pattern[pos] < limit[pos] - 1) {
        ++pattern[pos];
        break;
      }
      pattern[pos] = 1;
      if (pos == 0) return out;  // odometer wrapped: unsatisfiable
    }
  }
}

SolveResult solve_2sat(const Instance& instance) {
  const int n = instance.num_vars();
  const int nodes = 2 * n;
  auto lit_node = [](const Literal& l) { return 2 * (l.var - 1) + (l.negated ? 1 : 0); };
  auto neg_node = [](int node) { return node ^ 1; };

  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nodes));
  for (const Clause& c : instance.clauses()) {
    if (c.size() > 2) fail(errc::precondition_violated, "solve_2sat needs clauses of length <= 2");
    if (c.size() == 1) {
      const int a = lit_node(c[0]);
      adj[static_cast<std::size_t>(neg_node(a))].push_back(a);
    } else {
      const int a = lit_node(c[0]);
      const int b = lit_node(c[1]);
      adj[static_cast<std::size_t>(neg_node(a))].push_back(b);
      adj[static_cast<std::size_t>(neg_node(b))].push_back(a);
    }
  }

  // Iterative Tarjan; component ids increase in completion order (sinks of
  // the condensation get the smallest ids).
  std::vector<int> comp(static_cast<std::size_t>(nodes), -1);
  std::vector<int> index(static_cast<std::size_t>(nodes), -1);
  std::vector<int> lowlink(static_cast<std::size_t>(nodes), 0);
  std::vector<bool> on_stack(static_cast<std::size_t>(nodes), false);
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  struct Frame {
    int node;
    std::size_t edge;
  };
  for (int root = 0; root < nodes; ++root) {
    if (index[static_cast<std::size_t>(root)] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[static_cast<std::size_t>(root)] = lowlink[static_cast<std::size_t>(root)] = next_index++;
    stack.push_back(root);
    on_stack[static_cast<std::size_t>(root)] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto u = static_cast<std::size_t>(f.node);
      if (f.edge < adj[u].size()) {
        const int w = adj[u][f.edge++];
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == -1) {
          index[wi] = lowlink[wi] = next_index++;
          stack.push_back(w);
          on_stack[wi] = true;
          frames.push_back({w, 0});
        } else if (on_stack[wi]) {
          lowlink[u] = std::min(lowlink[u], index[wi]);
        }
      } else {
        if (lowlink[u] == index[u]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(w)] = false;
            comp[static_cast<std::size_t>(w)] = next_comp;
            if (w == f.node) break;
          }
          ++next_comp;
        }
        const int done = f.node;
        frames.pop_back();
        if (!frames.empty())
          lowlink[static_cast<std::size_t>(frames.back().node)] =
              std::min(lowlink[static_cast<std::size_t>(frames.back().node)],
                       lowlink[static_cast<std::size_t>(done)]);
      }
    }
  }

  Assignment alpha(n);
  for (int v = 1; v <= n; ++v) {
    const int pos = comp[static_cast<std::size_t>(2 * (v - 1))];
    const int neg = comp[static_cast<std::size_t>(2 * (v - 1) + 1)];
    if (pos == neg) return std::nullopt;
    // The component completed first is a sink; setting its literal true
    // cannot trigger an unsatisfied implication.
    alpha.set(v, pos < neg);
  }
  return alpha;
}

namespace {

// Two-watched-literal propagation engine for the dpll fallback.
class DpllEngine {
 public:
  explicit DpllEngine(const Instance& instance) : instance_(instance), n_(instance.num_vars()) {
    value_.assign(static_cast<std::size_t>(n_) + 1, 0);
    watches_.assign(2 * static_cast<std::size_t>(n_) + 2, {});
    for (std::size_t ci = 0; ci < instance_.clauses().size(); ++ci) {
      const Clause& c = instance_.clauses()[ci];
      watched_[0].push_back(0);
      watched_[1].push_back(c.size() > 1 ? 1 : 0);
      watches_[lit_index(c[0])].push_back(static_cast<int>(ci));
      if (c.size() > 1) watches_[lit_index(c[1])].push_back(static_cast<int>(ci));
    }
  }

  SolveResult run() {
    // Top-level units.
    for (std::size_t ci = 0; ci < instance_.clauses().size(); ++ci) {
      const Clause& c = instance_.clauses()[ci];
      if (c.size() == 1 && !enqueue(c[0])) return std::nullopt;
    }
    if (!propagate()) return std::nullopt;

    std::vector<std::pair<int, bool>> decisions;  // (var, second value tried)
    while (true) {
      int var = 0;
      for (int v = 1; v <= n_; ++v)
        if (value_[static_cast<std::size_t>(v)] == 0) {
          var = v;
          break;
        }
      if (var == 0) {
        Assignment alpha(n_);
        for (int v = 1; v <= n_; ++v) alpha.set(v, value_[static_cast<std::size_t>(v)] == 1);
        return alpha;
      }
      decisions.push_back({var, false});
      decision_marks_.push_back(static_cast<int>(trail_.size()));
      enqueue(Literal(var, false));  // branch: true first
      while (!propagate()) {
        // Chronological backtrack to the most recent decision with an
        // untried value.
        while (!decisions.empty() && decisions.back().second) {
          undo_to(decision_marks_.back());
          decisions.pop_back();
          decision_marks_.pop_back();
        }
        if (decisions.empty()) return std::nullopt;
        const int flip_var = decisions.back().first;
        undo_to(decision_marks_.back());
        decisions.back().second = true;
        enqueue(Literal(flip_var, true));  // then false
      }
    }
  }

 private:
  static std::size_t lit_index(const Literal& l) {
    return 2 * static_cast<std::size_t>(l.var - 1) + (l.negated ? 1 : 0);
  }

  int lit_value(const Literal& l) const {  // 0 unknown, 1 true, -1 false
    const int v = value_[static_cast<std::size_t>(l.var)];
    if (v == 0) return 0;
    const bool truth = v == 1;
    return l.value_under(truth) ? 1 : -1;
  }

  bool enqueue(const Literal& l) {
    const int cur = lit_value(l);
    if (cur == 1) return true;
    if (cur == -1) return false;
    value_[static_cast<std::size_t>(l.var)] = l.negated ? 2 : 1;
    trail_.push_back(l.var);
    queue_.push_back(l);
    return true;
  }

  bool propagate() {
    while (qhead_ < queue_.size()) {
      const Literal assigned = queue_[qhead_++];
      const Literal falsified = assigned.negate();
      auto& watch_list = watches_[lit_index(falsified)];
      std::vector<int> keep;
      keep.reserve(watch_list.size());
      bool conflict = false;
      for (std::size_t wi = 0; wi < watch_list.size(); ++wi) {
        const int ci = watch_list[wi];
        if (conflict) {
          keep.push_back(ci);
          continue;
        }
        const Clause& c = instance_.clauses()[static_cast<std::size_t>(ci)];
        int& w0 = watched_[0][static_cast<std::size_t>(ci)];
        int& w1 = watched_[1][static_cast<std::size_t>(ci)];
        int my = c[w0] == falsified ? 0 : 1;
        const int other = my == 0 ? w1 : w0;
        // Find a replacement watch.
        int replacement = -1;
        for (int j = 0; j < c.size(); ++j) {
          if (j == w0 || j == w1) continue;
          if (lit_value(c[j]) != -1) {
            replacement = j;
            break;
          }
        }
        if (replacement != -1) {
          (my == 0 ? w0 : w1) = replacement;
          watches_[lit_index(c[replacement])].push_back(ci);
          continue;  // dropped from this list
        }
        keep.push_back(ci);
        const Literal other_lit = c[other];
        if (lit_value(other_lit) == -1) {
          conflict = true;
        } else if (lit_value(other_lit) == 0) {
          if (!enqueue(other_lit)) conflict = true;
        }
      }
      watch_list = std::move(keep);
      if (conflict) {
        queue_.clear();
        qhead_ = 0;
        return false;
      }
    }
    return true;
  }

  void undo_to(int mark) {
    while (static_cast<int>(trail_.size()) > mark) {
      value_[static_cast<std::size_t>(trail_.back())] = 0;
      trail_.pop_back();
    }
    queue_.clear();
    qhead_ = 0;
  }

  const Instance& instance_;
  int n_;
  std::vector<int> value_;  // 0 unknown, 1 true, 2 false
  std::vector<int> trail_;
  std::vector<Literal> queue_;
  std::size_t qhead_ = 0;
  std::vector<int> decision_marks_;
  std::array<std::vector<int>, 2> watched_;  // per-clause watched literal positions
  std::vector<std::vector<int>> watches_;
};

}  // namespace

SolveResult dpll(const Instance& instance) {
  if (instance.empty()) return Assignment(instance.num_vars());
  for (const Clause& c : instance.clauses())
    if (c.size() == 0) return std::nullopt;
  return DpllEngine(instance).run();
}

namespace {

// Depth-first over the literals of the first unsatisfied clause; at least one
// branch moves closer to any in-ball solution.
struct BallSearcher {
  const Instance& instance;
  detail::WalkState& state;

  std::optional<Assignment> search(int depth) {
    const int ci = state.first_unsat();
    if (ci < 0) return state.assignment();
    if (depth == 0) return std::nullopt;
    const Clause& c = instance.clauses()[static_cast<std::size_t>(ci)];
    for (const Literal& l : c.literals()) {
      state.flip(l.var);
      if (auto hit = search(depth - 1)) return hit;
      state.flip(l.var);
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Assignment> ball_search(const Instance& instance, const Assignment& center, int radius,
                                      Mode mode) {
  if (radius < 0) fail(errc::infeasible_parameters, "negative radius");
  detail::WalkState state(instance, mode, center);
  BallSearcher searcher{instance, state};
  return searcher.search(radius);
}

std::optional<Assignment> schoening(const Instance& instance, Mode mode, std::int64_t steps, Rng& rng) {
  if (steps < 1) fail(errc::infeasible_parameters, "need steps >= 1");
  detail::WalkState state(instance, mode, detail::random_assignment(instance.num_vars(), rng));
  for (std::int64_t s = 0; s < steps; ++s) {
    if (state.all_satisfied()) return state.assignment();
    const int ci = state.unsat_at(static_cast<std::size_t>(rng.below(state.unsat_count())));
    const Clause& c = instance.clauses()[static_cast<std::size_t>(ci)];
    const Literal& l = c[static_cast<int>(rng.below(static_cast<std::uint64_t>(c.size())))];
    state.flip(l.var);
  }
  if (state.all_satisfied()) return state.assignment();
  return std::nullopt;
}

namespace {

int radius_of(const Rational& fraction, int len) {
  Rational r = fraction * len;
  // floor of an exact rational
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return static_cast<int>(q.get_si());
}

struct DlsPlan {
  std::vector<std::vector<std::uint32_t>> pair_codes;  // per pair
  std::vector<int> pair_radii;
  std::vector<std::vector<int>> blocks;                // rest variables, chunked
  std::vector<const std::vector<std::uint32_t>*> block_codes;
  std::vector<int> block_radii;
  int total_radius = 0;
};

DlsPlan make_plan(const Instance& conj, const PairSet& pairs, const SolverConfig& config) {
  DlsPlan plan;
  for (const ConjugatePair& p : pairs.pairs()) {
    const int len = p.length();
    const int r = std::min(radius_of(config.ball_radius_fraction, len), len);
    LpSolution lp;
    const LpSolution* lp_ptr = nullptr;
    if (len >= 3 && len <= 16) {
      lp = bounds::lp_closed_form(len);
      lp_ptr = &lp;
    }
    plan.pair_codes.push_back(pair_code(len, r, lp_ptr));
    plan.pair_radii.push_back(r);
    plan.total_radius += r;
  }

  std::vector<bool> in_pair(static_cast<std::size_t>(conj.num_vars()) + 1, false);
  for (const ConjugatePair& p : pairs.pairs())
    for (int v : p.variables) in_pair[static_cast<std::size_t>(v)] = true;
  std::vector<int> rest;
  for (int v = 1; v <= conj.num_vars(); ++v)
    if (!in_pair[static_cast<std::size_t>(v)]) rest.push_back(v);

  // Chunk the remaining variables into balanced blocks of length <= 12.
  const int nrest = static_cast<int>(rest.size());
  if (nrest > 0) {
    const int nblocks = (nrest + 11) / 12;
    int offset = 0;
    for (int b = 0; b < nblocks; ++b) {
      const int size = nrest / nblocks + (b < nrest % nblocks ? 1 : 0);
      plan.blocks.emplace_back(rest.begin() + offset, rest.begin() + offset + size);
      offset += size;
      const int r = std::min(radius_of(config.ball_radius_fraction, size), size);
      plan.block_codes.push_back(&hamming_code(size, r));
      plan.block_radii.push_back(r);
      plan.total_radius += r;
    }
  }
  return plan;
}

}  // namespace

SolveResult dls(const Instance& conjugate_closed, const PairSet& pairs, const SolverConfig& config,
                SolveTrace* trace) {
  if (conjugate_closed.empty()) return Assignment(conjugate_closed.num_vars());

  if (config.dls_strategy == DlsStrategy::randomized_walk) {
    // Incomplete strategy: statistics only, never an unsatisfiability claim.
    std::vector<PairDistribution> dists;
    for (const ConjugatePair& p : pairs.pairs()) {
      const int len = p.length();
      dists.push_back(len >= 3 ? PairDistribution::from_lp(bounds::lp_closed_form(len))
                               : PairDistribution::uniform(len));
    }
    const std::int64_t steps = 3LL * conjugate_closed.num_vars();
    for (int restart = 0; restart < config.walk_restarts; ++restart) {
      Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(restart)));
      Assignment start = detail::random_assignment(conjugate_closed.num_vars(), rng);
      for (std::size_t i = 0; i < pairs.size(); ++i)
        apply_pair_pattern(pairs[i], sample_pair_assignment(dists[i], rng), start);
      detail::WalkState state(conjugate_closed, Mode::sat, std::move(start));
      for (std::int64_t s = 0; s < steps && !state.all_satisfied(); ++s) {
        const int ci = state.unsat_at(static_cast<std::size_t>(rng.below(state.unsat_count())));
        const Clause& c = conjugate_closed.clauses()[static_cast<std::size_t>(ci)];
        state.flip(c[static_cast<int>(rng.below(static_cast<std::uint64_t>(c.size())))].var);
      }
      if (trace) trace->restarts_used = restart + 1;
      if (state.all_satisfied()) return state.assignment();
    }
    fail(errc::strategy_misuse,
         "randomized local search exhausted its restarts; it cannot certify unsatisfiability");
  }

  const DlsPlan plan = make_plan(conjugate_closed, pairs, config);

  // Odometer over the product code; every satisfying assignment restricts to
  // a point of A on each pair block, so the product covers the whole
  // candidate space at the combined radius.
  std::vector<std::size_t> idx(plan.pair_codes.size() + plan.blocks.size(), 0);
  const std::size_t dims = idx.size();
  std::int64_t codewords = 0;
  while (true) {
    Assignment center(conjugate_closed.num_vars());
    for (std::size_t i = 0; i < plan.pair_codes.size(); ++i)
      apply_pair_pattern(pairs[i], plan.pair_codes[i][idx[i]], center);
    for (std::size_t b = 0; b < plan.blocks.size(); ++b) {
      const std::uint32_t word = (*plan.block_codes[b])[idx[plan.pair_codes.size() + b]];
      for (std::size_t j = 0; j < plan.blocks[b].size(); ++j)
        center.set(plan.blocks[b][j], (word >> j) & 1u);
    }
    ++codewords;
    if (auto hit = ball_search(conjugate_closed, center, plan.total_radius, Mode::sat)) {
      if (trace) trace->codewords = codewords;
      return hit;
    }

    std::size_t pos = dims;
    bool wrapped = true;
    while (pos > 0) {
      --pos;
      const std::size_t limit = pos < plan.pair_codes.size()
                                    ? plan.pair_codes[pos].size()
                                    : plan.block_codes[pos - plan.pair_codes.size()]->size();
      if (idx[pos] + 1 < limit) {
        ++idx[pos];
        wrapped = false;
        break;
      }
      idx[pos] = 0;
    }
    if (dims == 0 || wrapped) break;
  }
  if (trace) trace->codewords = codewords;
  return std::nullopt;
}

SolveResult solve_nae(const Instance& instance, const SolverConfig& config, SolveTrace* trace) {
  if (instance.has_unit_clause())
    fail(errc::unit_clause_present, "1-clauses cannot be NAE-satisfied");
  if (instance.empty()) {
    if (trace) trace->engine = "trivial";
    return Assignment(instance.num_vars());
  }

  const Instance conj = to_conjugate_instance(instance);
  if (conj.max_len() <= 2) {
    if (trace) trace->engine = "2sat";
    return solve_2sat(conj);
  }
  config.validate(conj.max_len());

  BrResult branched = br(conj, config.nu);
  if (trace) {
    trace->pair_count = static_cast<std::int64_t>(branched.pairs.size());
    trace->branches = branched.branches;
  }
  if (branched.solved) {
    if (trace) trace->engine = "br";
    return branched.assignment;
  }
  if (trace)
    trace->engine = config.dls_strategy == DlsStrategy::covering_code ? "dls-covering" : "dls-walk";
  return dls(conj, branched.pairs, config, trace);
}

}  // namespace naesat
