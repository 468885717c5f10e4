#include "naesat/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <thread>

namespace naesat {

namespace {

// Lane L of a 64-bit word represents the assignment whose low six variables
// take the bits of L; PATTERN[i] holds the value of variable i+1 across lanes.
constexpr std::uint64_t kPattern[6] = {
    0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
    0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
};

struct LaneClause {
  std::uint64_t low_true = 0;   // lanes where some low literal is true
  std::uint64_t low_false = 0;  // lanes where some low literal is false
  std::vector<Literal> high;    // literals on variables > 6
};

std::vector<LaneClause> compile_lanes(const Instance& instance, int low) {
  std::vector<LaneClause> out;
  out.reserve(instance.clauses().size());
  for (const Clause& c : instance.clauses()) {
    LaneClause lc;
    for (const Literal& l : c.literals()) {
      if (l.var <= low) {
        const std::uint64_t truth = l.negated ? ~kPattern[l.var - 1] : kPattern[l.var - 1];
        lc.low_true |= truth;
        lc.low_false |= ~truth;
      } else {
        lc.high.push_back(l);
      }
    }
    out.push_back(std::move(lc));
  }
  return out;
}

std::uint64_t satisfied_lanes(const LaneClause& lc, std::uint64_t high_mask, int low, Mode mode) {
  std::uint64_t lanes_true = lc.low_true;
  std::uint64_t lanes_false = lc.low_false;
  for (const Literal& l : lc.high) {
    const bool value = (high_mask >> (l.var - 1 - low)) & 1ULL;
    if (l.value_under(value))
      lanes_true = ~0ULL;
    else
      lanes_false = ~0ULL;
  }
  return mode == Mode::sat ? lanes_true : (lanes_true & lanes_false);
}

struct DecideChunk {
  std::uint64_t found_mask = UINT64_MAX;  // UINT64_MAX = nothing found
};

}  // namespace

std::optional<Assignment> brute_decide(const Instance& instance, Mode mode,
                                       const OracleLimits& limits, int threads) {
  const int n = instance.num_vars();
  if (n > limits.decide_max_vars)
    fail(errc::too_large, "decision oracle limited to n <= " + std::to_string(limits.decide_max_vars));
  const int low = std::min(n, 6);
  const std::uint64_t high_count = 1ULL << (n - low);
  const std::uint64_t lane_limit = 1ULL << low;
  const std::uint64_t lane_mask = lane_limit == 64 ? ~0ULL : (1ULL << lane_limit) - 1;
  const auto lanes = compile_lanes(instance, low);

  auto scan = [&](std::uint64_t begin, std::uint64_t end,
                  const std::atomic<std::uint64_t>& cutoff) -> std::uint64_t {
    for (std::uint64_t h = begin; h < end; ++h) {
      if ((h & 0x3ff) == 0 && (cutoff.load(std::memory_order_relaxed) >> low) < begin)
        return UINT64_MAX;  // a lower chunk already found a witness
      std::uint64_t all = lane_mask;
      for (const LaneClause& lc : lanes) {
        all &= satisfied_lanes(lc, h, low, mode);
        if (all == 0) break;
      }
      if (all != 0)
        return (h << low) | static_cast<std::uint64_t>(std::countr_zero(all));
    }
    return UINT64_MAX;
  };

  std::uint64_t found = UINT64_MAX;
  if (threads <= 1 || high_count < 1024) {
    std::atomic<std::uint64_t> cutoff{UINT64_MAX};
    found = scan(0, high_count, cutoff);
  } else {
    const auto t = static_cast<std::uint64_t>(threads);
    std::atomic<std::uint64_t> best{UINT64_MAX};
    std::vector<std::thread> pool;
    for (std::uint64_t i = 0; i < t; ++i) {
      const std::uint64_t begin = high_count * i / t;
      const std::uint64_t end = high_count * (i + 1) / t;
      pool.emplace_back([&, begin, end] {
        const std::uint64_t r = scan(begin, end, best);
        std::uint64_t cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
      });
    }
    for (auto& th : pool) th.join();
    found = best.load();
  }
  if (found == UINT64_MAX) return std::nullopt;
  return Assignment::from_mask(n, found);
}

MaxResult brute_max(const Instance& instance, Mode mode, const OracleLimits& limits, int threads) {
  const int n = instance.num_vars();
  if (n > limits.optimize_max_vars)
    fail(errc::too_large,
         "optimization oracle limited to n <= " + std::to_string(limits.optimize_max_vars));
  const int low = std::min(n, 6);
  const std::uint64_t high_count = 1ULL << (n - low);
  const int lane_limit = 1 << low;
  const auto lanes = compile_lanes(instance, low);

  // Bit-sliced per-lane counters: counter bit j of lane L lives in bit L of
  // slice[j].
  const int slices = std::bit_width(instance.clauses().size()) + 1;

  struct Best {
    std::int64_t score = -1;
    std::uint64_t mask = 0;
  };

  auto scan = [&](std::uint64_t begin, std::uint64_t end) -> Best {
    Best best;
    std::vector<std::uint64_t> slice(static_cast<std::size_t>(slices));
    for (std::uint64_t h = begin; h < end; ++h) {
      std::fill(slice.begin(), slice.end(), 0);
      for (const LaneClause& lc : lanes) {
        std::uint64_t carry = satisfied_lanes(lc, h, low, mode);
        for (int j = 0; carry != 0; ++j) {
          const std::uint64_t t = slice[static_cast<std::size_t>(j)] & carry;
          slice[static_cast<std::size_t>(j)] ^= carry;
          carry = t;
        }
      }
      for (int lane = 0; lane < lane_limit; ++lane) {
        std::int64_t s = 0;
        for (int j = 0; j < slices; ++j)
          s |= static_cast<std::int64_t>((slice[static_cast<std::size_t>(j)] >> lane) & 1ULL) << j;
        if (s > best.score) {
          best.score = s;
          best.mask = (h << low) | static_cast<std::uint64_t>(lane);
        }
      }
    }
    return best;
  };

  Best best;
  if (threads <= 1 || high_count < 1024) {
    best = scan(0, high_count);
  } else {
    const auto t = static_cast<std::uint64_t>(threads);
    std::vector<Best> partial(t);
    std::vector<std::thread> pool;
    for (std::uint64_t i = 0; i < t; ++i) {
      const std::uint64_t begin = high_count * i / t;
      const std::uint64_t end = high_count * (i + 1) / t;
      pool.emplace_back([&, i, begin, end] { partial[i] = scan(begin, end); });
    }
    for (auto& th : pool) th.join();
    for (const Best& b : partial)
      if (b.score > best.score || (b.score == best.score && b.mask < best.mask)) best = b;
  }
  return MaxResult{best.score, Assignment::from_mask(n, best.mask)};
}

namespace {

Rational binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(b);
}

}  // namespace

LpSolution lp_solve_symmetric(int k) {
  if (k < 3 || k > 16) fail(errc::infeasible_parameters, "pair LP defined for 3 <= k <= 16");
  const Rational r(1, k - 1);

  // Unknowns: q_1..q_{k-1} (pi per distance class) and lambda.
  const int unknowns = k;
  std::vector<std::vector<Rational>> aug(static_cast<std::size_t>(unknowns),
                                         std::vector<Rational>(static_cast<std::size_t>(unknowns) + 1, Rational(0)));

  // One equality constraint per distance class of the reference point a*.
  for (int ystar = 1; ystar <= k - 1; ++ystar) {
    auto& row = aug[static_cast<std::size_t>(ystar - 1)];
    for (int y = 1; y <= k - 1; ++y) {
      Rational coeff(0);
      for (int i = std::max(0, y - (k - ystar)); i <= std::min(y, ystar); ++i) {
        const int j = y - i;
        coeff += binomial(ystar, i) * binomial(k - ystar, j) *
                 rat_pow(r, static_cast<unsigned long>((ystar - i) + j));
      }
      row[static_cast<std::size_t>(y - 1)] = coeff;
    }
    row[static_cast<std::size_t>(k - 1)] = Rational(-1);  // - lambda
    row[static_cast<std::size_t>(k)] = Rational(0);
  }
  // Normalization: sum over A of pi(a) = 1.
  {
    auto& row = aug[static_cast<std::size_t>(k - 1)];
    for (int y = 1; y <= k - 1; ++y) row[static_cast<std::size_t>(y - 1)] = binomial(k, y);
    row[static_cast<std::size_t>(k - 1)] = Rational(0);
    row[static_cast<std::size_t>(k)] = Rational(1);
  }

  // Exact Gaussian elimination with first-nonzero pivoting.
  for (int col = 0; col < unknowns; ++col) {
    int pivot = -1;
    for (int r2 = col; r2 < unknowns; ++r2)
      if (aug[static_cast<std::size_t>(r2)][static_cast<std::size_t>(col)] != 0) {
        pivot = r2;
        break;
      }
    if (pivot < 0) fail(errc::singular_system, "pair LP system is singular at k=" + std::to_string(k));
    std::swap(aug[static_cast<std::size_t>(col)], aug[static_cast<std::size_t>(pivot)]);
    const Rational inv = Rational(1) / aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    for (int c2 = col; c2 <= unknowns; ++c2) aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)] *= inv;
    for (int r2 = 0; r2 < unknowns; ++r2) {
      if (r2 == col) continue;
      const Rational factor = aug[static_cast<std::size_t>(r2)][static_cast<std::size_t>(col)];
      if (factor == 0) continue;
      for (int c2 = col; c2 <= unknowns; ++c2)
        aug[static_cast<std::size_t>(r2)][static_cast<std::size_t>(c2)] -=
            factor * aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(c2)];
    }
  }

  LpSolution sol;
  sol.k = k;
  sol.pi_by_distance.assign(static_cast<std::size_t>(k) + 1, Rational(0));
  for (int y = 1; y <= k - 1; ++y)
    sol.pi_by_distance[static_cast<std::size_t>(y)] =
        aug[static_cast<std::size_t>(y - 1)][static_cast<std::size_t>(unknowns)];
  sol.lambda = aug[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(unknowns)];
  return sol;
}

}  // namespace naesat
