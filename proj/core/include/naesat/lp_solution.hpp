#pragma once

#include <vector>

#include "naesat/error.hpp"
#include "naesat/rational.hpp"

namespace naesat {

// Solution of the pair linear program: the efficiency constant lambda and the
// distribution pi over the pair solution space A = {0,1}^k \ {0^k, 1^k}.
// pi depends on a point only through its Hamming weight, so it is stored per
// distance-from-all-zeros.
struct LpSolution {
  int k = 0;
  Rational lambda;
  std::vector<Rational> pi_by_distance;  // index y in 1..k-1; [0] and [k] are zero

  const Rational& pi_at(int distance) const {
    if (distance < 0 || distance >= static_cast<int>(pi_by_distance.size()))
      fail(errc::precondition_violated, "distance out of range");
    return pi_by_distance[static_cast<std::size_t>(distance)];
  }

  friend bool operator==(const LpSolution&, const LpSolution&) = default;
};

}  // namespace naesat
