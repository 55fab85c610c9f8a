#pragma once
// Brute-force references used by the unit tests.
#include <cstdint>
#include <numeric>
#include <tuple>
#include <vector>

#include "padiclab/lattice.hpp"

namespace naive {

using i128 = __int128;

struct Pair {
  long x, y, val;
  bool exact;
};

// v_p(y xi - x) from the residue, capped at precision + v_p(y)
inline Pair valuation(const padiclab::PAdicNumber& xi, long x, long y) {
  const long p = static_cast<long>(xi.p()), N = static_cast<long>(xi.precision());
  long vy = 0;
  for (long t = y; t % p == 0; t /= p) ++vy;
  const long cap = N + vy;
  i128 mod = 1;
  for (long i = 0; i < cap; ++i) mod *= p;
  i128 d = (static_cast<i128>(y) * xi.value().get_si() - x) % mod;
  if (d < 0) d += mod;
  if (d == 0) return {x, y, cap, false};
  long v = 0;
  while (d % p == 0) {
    d /= p;
    ++v;
  }
  return {x, y, v, true};
}

inline long height(padiclab::Norm n, long x, long y) {
  long ax = x < 0 ? -x : x, ay = y < 0 ? -y : y;
  return n == padiclab::Norm::Sup ? std::max(ax, ay) : ax * ay;
}

inline std::vector<Pair> coprime_pairs(const padiclab::PAdicNumber& xi, padiclab::Norm n, long bound) {
  std::vector<Pair> out;
  for (long y = 1; y <= bound; ++y)
    for (long x = -bound; x <= bound; ++x)
      if (x != 0 && std::gcd(x < 0 ? -x : x, y) == 1 && height(n, x, y) <= bound) out.push_back(valuation(xi, x, y));
  return out;
}

inline bool key_less(padiclab::Norm n, const Pair& a, const Pair& b) {
  auto k = [&](const Pair& q) {
    return std::make_tuple(height(n, q.x, q.y), q.x < 0 ? -q.x : q.x, q.x < 0, q.y);
  };
  return k(a) < k(b);
}

// staircase of per-level minimizers among pairs within the bound
inline std::vector<Pair> staircase(const padiclab::PAdicNumber& xi, padiclab::Norm n, long bound) {
  auto all = coprime_pairs(xi, n, bound);
  std::vector<Pair> out;
  const long N = static_cast<long>(xi.precision());
  long v = 1;
  while (v <= N) {
    const Pair* best = nullptr;
    for (const auto& q : all)
      if (q.val >= v && (!best || key_less(n, q, *best))) best = &q;
    if (!best) break;
    if (!best->exact) {
      // censored pair, kept as the final element
      out.push_back(*best);
      break;
    }
    if (!out.empty() && height(n, out.back().x, out.back().y) == height(n, best->x, best->y))
      out.back() = *best;
    else
      out.push_back(*best);
    v = best->val + 1;
  }
  return out;
}

// largest valuation over all pairs with x != 0, y >= 1 within the bound
inline long uniform_max(const padiclab::PAdicNumber& xi, padiclab::Norm n, long bound) {
  long best = -1;
  for (long y = 1; y <= bound; ++y)
    for (long x = -bound; x <= bound; ++x)
      if (x != 0 && height(n, x, y) <= bound) best = std::max(best, valuation(xi, x, y).val);
  return best;
}

}  // namespace naive
