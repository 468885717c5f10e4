#include "naesat/covercode.hpp"

#include <bit>
#include <map>
#include <mutex>

namespace naesat {

namespace {

// All xor-masks of weight <= radius over len bits, i.e. the offsets of a
// Hamming ball around any center.
std::vector<std::uint32_t> ball_offsets(int len, int radius) {
  std::vector<std::uint32_t> out;
  const std::uint32_t space = 1u << len;
  for (std::uint32_t m = 0; m < space; ++m)
    if (std::popcount(m) <= radius) out.push_back(m);
  return out;
}

}  // namespace

const std::vector<std::uint32_t>& hamming_code(int len, int radius) {
  if (len < 0 || len > 16) fail(errc::too_large, "block length limited to 16");
  if (radius < 0) fail(errc::infeasible_parameters, "negative radius");
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<std::uint32_t>> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find({len, radius});
  if (it != cache.end()) return it->second;

  const std::uint32_t space = len == 0 ? 1u : (1u << len);
  const auto offsets = ball_offsets(len, std::min(radius, len));
  std::vector<bool> covered(space, false);
  std::uint32_t uncovered = space;
  std::vector<std::uint32_t> code;
  while (uncovered > 0) {
    std::uint32_t best = 0;
    std::uint32_t best_gain = 0;
    for (std::uint32_t cand = 0; cand < space; ++cand) {
      std::uint32_t gain = 0;
      for (std::uint32_t off : offsets)
        if (!covered[cand ^ off]) ++gain;
      if (gain > best_gain) {
        best_gain = gain;
        best = cand;
      }
    }
    code.push_back(best);
    for (std::uint32_t off : offsets)
      if (!covered[best ^ off]) {
        covered[best ^ off] = true;
        --uncovered;
      }
  }
  return cache.emplace(std::make_pair(len, radius), std::move(code)).first->second;
}

std::vector<std::uint32_t> pair_code(int k, int radius, const LpSolution* dist) {
  if (k < 2 || k > 16) fail(errc::infeasible_parameters, "pair length must be in [2, 16]");
  if (radius < 0) fail(errc::infeasible_parameters, "negative radius");
  const std::uint32_t space = 1u << k;
  const std::uint32_t all_ones = space - 1;
  const auto offsets = ball_offsets(k, std::min(radius, k));

  auto in_space = [&](std::uint32_t a) { return a != 0 && a != all_ones; };
  auto weight = [&](std::uint32_t a) -> Rational {
    if (dist == nullptr) return Rational(1, static_cast<long>(space - 2));
    return dist->pi_at(std::popcount(a));
  };

  std::vector<bool> covered(space, false);
  std::uint32_t uncovered = space - 2;
  std::vector<std::uint32_t> code;
  while (uncovered > 0) {
    std::uint32_t best = 0;
    Rational best_gain(-1);
    for (std::uint32_t cand = 1; cand < all_ones; ++cand) {
      Rational gain(0);
      for (std::uint32_t off : offsets) {
        const std::uint32_t pt = cand ^ off;
        if (in_space(pt) && !covered[pt]) gain += weight(pt);
      }
      if (gain > best_gain) {
        best_gain = gain;
        best = cand;
      }
    }
    code.push_back(best);
    for (std::uint32_t off : offsets) {
      const std::uint32_t pt = best ^ off;
      if (in_space(pt) && !covered[pt]) {
        covered[pt] = true;
        --uncovered;
      }
    }
  }
  return code;
}

bool code_covers(const std::vector<std::uint32_t>& codewords, int len, int radius,
                 bool restrict_to_pair_space) {
  const std::uint32_t space = len == 0 ? 1u : (1u << len);
  const std::uint32_t all_ones = (1u << len) - 1;
  for (std::uint32_t pt = 0; pt < space; ++pt) {
    if (restrict_to_pair_space && (pt == 0 || pt == all_ones)) continue;
    bool hit = false;
    for (std::uint32_t c : codewords)
      if (std::popcount(pt ^ c) <= radius) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace naesat
