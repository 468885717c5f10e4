#include "naesat/williams.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "naesat/rng.hpp"

namespace naesat {

std::int64_t QuadraticPoly::eval(const Assignment& alpha) const {
  std::int64_t v = constant;
  for (const auto& [var, coeff] : linear)
    if (alpha.get(var)) v += coeff;
  for (const auto& [pair, coeff] : quadratic)
    if (alpha.get(pair.first) && alpha.get(pair.second)) v += coeff;
  return v;
}

namespace {

// Multilinear polynomial over the clause's variables, monomials keyed by a
// bitmask over literal positions.
struct LocalPoly {
  std::vector<std::int64_t> coeff;  // size 2^len

  explicit LocalPoly(int len, std::int64_t constant = 0)
      : coeff(static_cast<std::size_t>(1) << len, 0) {
    coeff[0] = constant;
  }

  void mul_literal(const Literal& l, int position) {
    // p *= (x or 1-x); multiply by x shifts every monomial into position's set.
    std::vector<std::int64_t> next(coeff.size(), 0);
    const std::size_t bit = static_cast<std::size_t>(1) << position;
    for (std::size_t m = 0; m < coeff.size(); ++m) {
      if (coeff[m] == 0) continue;
      if (l.negated) {
        next[m] += coeff[m];        // 1 * monomial
        next[m | bit] -= coeff[m];  // -x * monomial
      } else {
        next[m | bit] += coeff[m];
      }
    }
    coeff = std::move(next);
  }

  void add(const LocalPoly& other, std::int64_t scale) {
    for (std::size_t m = 0; m < coeff.size(); ++m) coeff[m] += scale * other.coeff[m];
  }
};

// Product over literals of (value of literal), i.e. the all-true indicator.
LocalPoly all_true_poly(const Clause& clause) {
  LocalPoly p(clause.size(), 1);
  for (int j = 0; j < clause.size(); ++j) p.mul_literal(clause[j], j);
  return p;
}

// Product over literals of (1 - value), i.e. the all-false indicator.
LocalPoly all_false_poly(const Clause& clause) {
  LocalPoly p(clause.size(), 1);
  for (int j = 0; j < clause.size(); ++j) p.mul_literal(clause[j].negate(), j);
  return p;
}

}  // namespace

QuadraticPoly clause_poly(const Clause& clause, Mode mode) {
  const int len = clause.size();
  if (mode == Mode::nae && len < 2)
    fail(errc::precondition_violated, "1-clauses are never NAE-satisfied");

  LocalPoly indicator(len, 1);
  indicator.add(all_false_poly(clause), -1);                  // sat = 1 - all_false
  if (mode == Mode::nae) indicator.add(all_true_poly(clause), -1);  // nae also excludes all_true

  QuadraticPoly out;
  const auto& lits = clause.literals();
  for (std::size_t m = 0; m < indicator.coeff.size(); ++m) {
    const std::int64_t c = indicator.coeff[m];
    if (c == 0) continue;
    const int degree = std::popcount(static_cast<unsigned>(m));
    if (degree > 2)
      fail(errc::degree_too_high,
           "clause has no degree-2 indicator (sat length <= 2, nae length <= 3)");
    if (degree == 0) {
      out.constant += c;
    } else if (degree == 1) {
      const int pos = std::countr_zero(static_cast<unsigned>(m));
      out.linear[lits[static_cast<std::size_t>(pos)].var] += c;
    } else {
      const int lo = std::countr_zero(static_cast<unsigned>(m));
      const int hi = 31 - std::countl_zero(static_cast<unsigned>(m));
      int u = lits[static_cast<std::size_t>(lo)].var;
      int v = lits[static_cast<std::size_t>(hi)].var;
      if (u > v) std::swap(u, v);
      out.quadratic[{u, v}] += c;
    }
  }
  return out;
}

Partition Partition::by_index(int n) {
  Partition p;
  int var = 1;
  for (int block = 0; block < 3; ++block) {
    const int size = n / 3 + (block < n % 3 ? 1 : 0);
    for (int i = 0; i < size; ++i) p.parts[static_cast<std::size_t>(block)].push_back(var++);
  }
  return p;
}

Assignment TripartiteWeights::assemble(int n, std::uint32_t a0, std::uint32_t a1, std::uint32_t a2) const {
  Assignment alpha(n);
  const std::uint32_t words[3] = {a0, a1, a2};
  for (int p = 0; p < 3; ++p) {
    const auto& vars = partition.parts[static_cast<std::size_t>(p)];
    for (std::size_t j = 0; j < vars.size(); ++j) alpha.set(vars[j], (words[p] >> j) & 1u);
  }
  return alpha;
}

namespace {

struct VarSlot {
  int part = 0;
  int bit = 0;
};

// Intra-part and constant charges go to a fixed matrix per part: part 0 to
// w01, part 1 to w12, part 2 to w02 (constants to w01).
void charge_constant(IntMatrix& m, std::int64_t c) {
  for (int r = 0; r < m.rows(); ++r)
    for (int col = 0; col < m.cols(); ++col) m.at(r, col) += c;
}

void charge_single(IntMatrix& m, bool row_side, int bit, std::int64_t c) {
  for (int r = 0; r < m.rows(); ++r)
    for (int col = 0; col < m.cols(); ++col) {
      const int word = row_side ? r : col;
      if ((word >> bit) & 1) m.at(r, col) += c;
    }
}

void charge_pair_same(IntMatrix& m, bool row_side, int bit_a, int bit_b, std::int64_t c) {
  for (int r = 0; r < m.rows(); ++r)
    for (int col = 0; col < m.cols(); ++col) {
      const int word = row_side ? r : col;
      if (((word >> bit_a) & 1) && ((word >> bit_b) & 1)) m.at(r, col) += c;
    }
}

void charge_pair_cross(IntMatrix& m, int row_bit, int col_bit, std::int64_t c) {
  for (int r = 0; r < m.rows(); ++r) {
    if (!((r >> row_bit) & 1)) continue;
    for (int col = 0; col < m.cols(); ++col)
      if ((col >> col_bit) & 1) m.at(r, col) += c;
  }
}

}  // namespace

TripartiteWeights build_weights(const Instance& instance, Mode mode, const Partition& partition) {
  for (int p = 0; p < 3; ++p)
    if (partition.part_bits(p) > 14) fail(errc::too_large, "partition block exceeds 14 variables");

  std::vector<VarSlot> slot(static_cast<std::size_t>(instance.num_vars()) + 1);
  for (int p = 0; p < 3; ++p) {
    const auto& vars = partition.parts[static_cast<std::size_t>(p)];
    for (std::size_t j = 0; j < vars.size(); ++j)
      slot[static_cast<std::size_t>(vars[j])] = {p, static_cast<int>(j)};
  }

  TripartiteWeights w;
  w.partition = partition;
  const int d0 = 1 << partition.part_bits(0);
  const int d1 = 1 << partition.part_bits(1);
  const int d2 = 1 << partition.part_bits(2);
  w.w01 = IntMatrix(d0, d1);
  w.w12 = IntMatrix(d1, d2);
  w.w02 = IntMatrix(d0, d2);

  // matrix holding part p's internal terms, and whether p indexes its rows
  auto home = [&](int p) -> std::pair<IntMatrix*, bool> {
    if (p == 0) return {&w.w01, true};
    if (p == 1) return {&w.w12, true};
    return {&w.w02, false};
  };

  for (const Clause& clause : instance.clauses()) {
    const QuadraticPoly poly = clause_poly(clause, mode);
    if (poly.constant != 0) charge_constant(w.w01, poly.constant);
    for (const auto& [var, c] : poly.linear) {
      if (c == 0) continue;
      const VarSlot s = slot[static_cast<std::size_t>(var)];
      const auto [m, row_side] = home(s.part);
      charge_single(*m, row_side, s.bit, c);
    }
    for (const auto& [vars, c] : poly.quadratic) {
      if (c == 0) continue;
      const VarSlot a = slot[static_cast<std::size_t>(vars.first)];
      const VarSlot b = slot[static_cast<std::size_t>(vars.second)];
      if (a.part == b.part) {
        const auto [m, row_side] = home(a.part);
        charge_pair_same(*m, row_side, a.bit, b.bit, c);
      } else {
        const VarSlot lo = a.part < b.part ? a : b;
        const VarSlot hi = a.part < b.part ? b : a;
        if (lo.part == 0 && hi.part == 1)
          charge_pair_cross(w.w01, lo.bit, hi.bit, c);
        else if (lo.part == 1 && hi.part == 2)
          charge_pair_cross(w.w12, lo.bit, hi.bit, c);
        else
          charge_pair_cross(w.w02, lo.bit, hi.bit, c);
      }
    }
  }
  return w;
}

namespace {

std::vector<std::int64_t> realized_values_desc(const IntMatrix& m) {
  std::set<std::int64_t> vals;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) vals.insert(m.at(r, c));
  return {vals.rbegin(), vals.rend()};
}

std::int64_t matrix_max(const IntMatrix& m) {
  std::int64_t best = INT64_MIN;
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) best = std::max(best, m.at(r, c));
  return best;
}

using Triple = std::array<std::uint32_t, 3>;

bool triple_less(const Triple& a, const Triple& b) { return a < b; }

}  // namespace

TriangleResult max_weight_triangle(const TripartiteWeights& weights, MatMulKind kind) {
  const int d0 = weights.w01.rows();
  const int d1 = weights.w01.cols();
  const int d2 = weights.w12.cols();

  // Deterministic probe for a lower bound; every optimal (k1, k2) family
  // survives the pruning below, so the probe never changes the result.
  TriangleResult best;
  best.total = weights.total(0, 0, 0);
  best.blocks = {0, 0, 0};
  {
    std::uint64_t s = 0x5eed5eed5eed5eedULL;
    for (int probe = 0; probe < 64; ++probe) {
      const std::uint32_t a0 = static_cast<std::uint32_t>(splitmix64(s + 3 * probe) % d0);
      const std::uint32_t a1 = static_cast<std::uint32_t>(splitmix64(s + 3 * probe + 1) % d1);
      const std::uint32_t a2 = static_cast<std::uint32_t>(splitmix64(s + 3 * probe + 2) % d2);
      const std::int64_t t = weights.total(a0, a1, a2);
      const Triple tr{a0, a1, a2};
      if (t > best.total || (t == best.total && triple_less(tr, best.blocks))) {
        best.total = t;
        best.blocks = tr;
      }
    }
  }

  const auto k1_values = realized_values_desc(weights.w01);
  const auto k2_values = realized_values_desc(weights.w12);
  const std::int64_t w02_max = matrix_max(weights.w02);

  for (const std::int64_t k1 : k1_values) {
    if (k1 + k2_values.front() + w02_max < best.total) break;
    IntMatrix b1(d0, d1);
    for (int r = 0; r < d0; ++r)
      for (int c = 0; c < d1; ++c) b1.at(r, c) = weights.w01.at(r, c) == k1 ? 1 : 0;
    for (const std::int64_t k2 : k2_values) {
      if (k1 + k2 + w02_max < best.total) break;
      IntMatrix b2(d1, d2);
      for (int r = 0; r < d1; ++r)
        for (int c = 0; c < d2; ++c) b2.at(r, c) = weights.w12.at(r, c) == k2 ? 1 : 0;
      const IntMatrix counts = multiply(b1, b2, kind);
      for (int a0 = 0; a0 < d0; ++a0)
        for (int a2 = 0; a2 < d2; ++a2) {
          if (counts.at(a0, a2) == 0) continue;
          const std::int64_t total = k1 + k2 + weights.w02.at(a0, a2);
          if (total < best.total) continue;
          // recover the smallest middle block
          std::uint32_t a1 = 0;
          bool found = false;
          for (int mid = 0; mid < d1; ++mid)
            if (weights.w01.at(a0, mid) == k1 && weights.w12.at(mid, a2) == k2) {
              a1 = static_cast<std::uint32_t>(mid);
              found = true;
              break;
            }
          if (!found) continue;  // unreachable if the product is correct
          const Triple tr{static_cast<std::uint32_t>(a0), a1, static_cast<std::uint32_t>(a2)};
          if (total > best.total || (total == best.total && triple_less(tr, best.blocks))) {
            best.total = total;
            best.blocks = tr;
          }
        }
    }
  }
  return best;
}

MaxResult exact_max(const Instance& instance, Mode mode, MatMulKind kind) {
  const Partition partition = Partition::by_index(instance.num_vars());
  const TripartiteWeights weights = build_weights(instance, mode, partition);
  const TriangleResult tri = max_weight_triangle(weights, kind);
  MaxResult out;
  out.optimum = tri.total;
  out.assignment = weights.assemble(instance.num_vars(), tri.blocks[0], tri.blocks[1], tri.blocks[2]);
  return out;
}

}  // namespace naesat
