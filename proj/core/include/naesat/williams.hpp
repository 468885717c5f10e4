#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "naesat/formula.hpp"
#include "naesat/matmul.hpp"
#include "naesat/oracle.hpp"

namespace naesat {

// Degree-2 polynomial over 0/1 variables whose value at every point equals
// the clause's (NAE-)satisfaction indicator. Sat clauses of length <= 2 and
// NAE clauses of length 2..3 admit one; anything longer does not.
struct QuadraticPoly {
  std::int64_t constant = 0;
  std::map<int, std::int64_t> linear;                        // var -> coefficient
  std::map<std::pair<int, int>, std::int64_t> quadratic;     // (u < v) -> coefficient

  std::int64_t eval(const Assignment& alpha) const;
};

QuadraticPoly clause_poly(const Clause& clause, Mode mode);

// Balanced three-way variable split by index order; block sizes differ by at
// most one.
struct Partition {
  std::array<std::vector<int>, 3> parts;

  static Partition by_index(int n);
  int part_bits(int p) const { return static_cast<int>(parts[static_cast<std::size_t>(p)].size()); }
};

// Every monomial of every clause polynomial is charged to exactly one of the
// three matrices, so that for any full assignment (a0, a1, a2):
//   w01[a0][a1] + w12[a1][a2] + w02[a0][a2] = number of (NAE-)satisfied clauses.
struct TripartiteWeights {
  Partition partition;
  IntMatrix w01, w12, w02;

  std::int64_t total(std::uint32_t a0, std::uint32_t a1, std::uint32_t a2) const {
    return w01.at(static_cast<int>(a0), static_cast<int>(a1)) +
           w12.at(static_cast<int>(a1), static_cast<int>(a2)) +
           w02.at(static_cast<int>(a0), static_cast<int>(a2));
  }

  Assignment assemble(int n, std::uint32_t a0, std::uint32_t a1, std::uint32_t a2) const;
};

TripartiteWeights build_weights(const Instance& instance, Mode mode, const Partition& partition);

struct TriangleResult {
  std::int64_t total = 0;
  std::array<std::uint32_t, 3> blocks{0, 0, 0};
};

// Exact max-weight triangle: enumerate realized value pairs (k1 of w01, k2 of
// w12), multiply the 0/1 indicator matrices, and check w02 against the
// target. Lexicographically smallest optimal triple is returned.
TriangleResult max_weight_triangle(const TripartiteWeights& weights,
                                   MatMulKind kind = MatMulKind::naive);

// Exact MAX-(NAE-)SAT through the tripartite reduction. Agrees with brute_max
// wherever both are defined.
MaxResult exact_max(const Instance& instance, Mode mode, MatMulKind kind = MatMulKind::naive);

}  // namespace naesat
