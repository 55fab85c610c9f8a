#include "padiclab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace padiclab {

Norm parse_norm(const std::string& s) {
  if (s == "sup") return Norm::Sup;
  if (s == "mult") return Norm::Mult;
  throw InputError("unknown norm '" + s + "' (expected sup or mult)");
}

std::string to_string(Norm n) { return n == Norm::Sup ? "sup" : "mult"; }

mpz_class norm_height(Norm norm, const mpz_class& x, const mpz_class& y) {
  if (norm == Norm::Mult) return abs(x) * abs(y);
  mpz_class ax = abs(x), ay = abs(y);
  return ax > ay ? ax : ay;
}

namespace {

mpz_class round_div(const mpz_class& a, const mpz_class& b) {
  // nearest integer to a/b for b > 0
  mpz_class q;
  mpz_class num = 2 * a + b;
  mpz_class den = 2 * b;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

int cmpabs(const mpz_class& a, const mpz_class& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

struct Candidate {
  mpz_class x, y, h;
};

// (height, |x|, x < 0, y)
bool key_less(const Candidate& a, const Candidate& b) {
  int c = cmp(a.h, b.h);
  if (c != 0) return c < 0;
  c = cmpabs(a.x, b.x);
  if (c != 0) return c < 0;
  bool an = a.x < 0, bn = b.x < 0;
  if (an != bn) return !an;
  return a.y < b.y;
}

}  // namespace

ApproxLattice lattice_at_level(const PAdicNumber& xi, long v) {
  if (v < 1 || static_cast<std::size_t>(v) > xi.precision())
    throw InputError("level " + std::to_string(v) + " out of range");
  mpz_class bx = residue(xi, static_cast<std::size_t>(v)), by = 1;
  mpz_class cx = ipow(xi.p(), static_cast<unsigned long>(v)), cy = 0;
  for (;;) {
    mpz_class n1 = bx * bx + by * by, n2 = cx * cx + cy * cy;
    if (n1 > n2) {
      std::swap(bx, cx);
      std::swap(by, cy);
      std::swap(n1, n2);
    }
    mpz_class m = round_div(bx * cx + by * cy, n1);
    if (m == 0) break;
    cx -= m * bx;
    cy -= m * by;
  }
  ApproxLattice L;
  L.p = xi.p();
  L.v = v;
  L.b1 = make_pair(xi, bx, by);
  L.b2 = make_pair(xi, cx, cy);
  return L;
}

ApproxPair best_at_level(const PAdicNumber& xi, long v, Norm norm) {
  if (v < 1 || static_cast<std::size_t>(v) > xi.precision())
    throw InputError("level " + std::to_string(v) + " out of range");
  const unsigned long p = xi.p();
  const mpz_class Nv = ipow(p, static_cast<unsigned long>(v));
  const mpz_class r = residue(xi, static_cast<std::size_t>(v));

  Candidate best;
  bool have = false;
  auto offer = [&](const mpz_class& x, const mpz_class& y) {
    if (x == 0 || mpz_divisible_ui_p(y.get_mpz_t(), p)) return;
    Candidate c{x, y, norm_height(norm, x, y)};
    if (!have || key_less(c, best)) {
      best = std::move(c);
      have = true;
    }
  };

  if (r == 0) {
    offer(Nv, mpz_class(1));
  } else {
    // Continued fraction of r / p^v.  Convergent k gives the lattice point
    // (x_k, q_k) with x_k = q_k r - p_k p^v = (-1)^k rem_k.
    mpz_class num = r, den = Nv, a, rem;
    mpz_class x2 = r, q2 = 1;     // c_{k-2}
    mpz_class x1 = -Nv, q1 = 0;   // c_{k-1}
    mpz_class xk, qk;
    mpz_class cx, cy, b0, t1, t2;
    for (long k = 0;; ++k) {
      mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
      // intermediate points between c_{k-2} and c_{k-1}, which need a_k
      if (k >= 2 && mpz_divisible_ui_p(q1.get_mpz_t(), p) && a > 1) {
        auto try_beta = [&](const mpz_class& beta) {
          if (beta < 1 || beta > a - 1) return;
          cx = x2 + beta * x1;
          cy = q2 + beta * q1;
          offer(cx, cy);
        };
        try_beta(mpz_class(1));
        try_beta(a - 1);
        if (norm == Norm::Sup) {
          t1 = abs(x2) - q2;
          t2 = abs(x1) + q1;
          mpz_fdiv_q(b0.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
          try_beta(b0);
          try_beta(b0 + 1);
        }
      }
      qk = q2;
      mpz_addmul(qk.get_mpz_t(), a.get_mpz_t(), q1.get_mpz_t());
      xk = (k % 2 == 0) ? rem : mpz_class(-rem);
      if (have && qk > best.h) break;
      offer(xk, qk);
      if (rem == 0) break;
      x2.swap(x1);
      q2.swap(q1);
      x1.swap(xk);
      q1.swap(qk);
      num.swap(den);
      den.swap(rem);
    }
  }

  if (best.x < 0) {
    // the twin (-x, y') with y' = -y modulo the period of (0, t) in the lattice
    mpz_class g = gcd(r, Nv);
    mpz_class period = Nv / g;
    mpz_class y2 = -best.y;
    mpz_fdiv_r(y2.get_mpz_t(), y2.get_mpz_t(), period.get_mpz_t());
    if (y2 == 0) y2 = period;
    mpz_class nx = -best.x;
    if (norm_height(norm, nx, y2) == best.h && !mpz_divisible_ui_p(y2.get_mpz_t(), p) &&
        (norm == Norm::Sup || y2 == best.y)) {
      best.x = nx;
      best.y = y2;
    }
  }
  return make_pair(xi, best.x, best.y);
}

ApproxPair best_sup_at_level(const PAdicNumber& xi, long v) { return best_at_level(xi, v, Norm::Sup); }

ApproxPair best_mult_at_level(const PAdicNumber& xi, long v) { return best_at_level(xi, v, Norm::Mult); }

namespace {

void push_staircase(BestApproxChain& c, ApproxPair a) {
  if (!c.entries.empty() && c.height(c.entries.size() - 1) == norm_height(c.norm, a.x, a.y))
    c.entries.back() = std::move(a);
  else
    c.entries.push_back(std::move(a));
}

}  // namespace

BestApproxChain chain(const PAdicNumber& xi, Norm norm, long max_level) {
  if (max_level < 1) throw InputError("max level must be at least 1");
  if (static_cast<std::size_t>(max_level) > xi.precision())
    throw InputError("max level " + std::to_string(max_level) + " exceeds precision " +
                     std::to_string(xi.precision()));
  BestApproxChain c;
  c.norm = norm;
  c.p = xi.p();
  c.precision_ceiling = static_cast<std::size_t>(max_level);
  long v = 1;
  while (v <= max_level) {
    ApproxPair a = best_at_level(xi, v, norm);
    if (!a.val.is_exact()) {
      c.censored = std::move(a);
      break;
    }
    v = a.val.value + 1;
    push_staircase(c, std::move(a));
  }
  return c;
}

BestApproxChain restrict_chain(const BestApproxChain& c, const mpz_class& bound) {
  BestApproxChain r;
  r.norm = c.norm;
  r.p = c.p;
  r.precision_ceiling = c.precision_ceiling;
  for (std::size_t k = 0; k < c.entries.size(); ++k)
    if (c.height(k) <= bound) r.entries.push_back(c.entries[k]);
  if (c.censored && norm_height(c.norm, c.censored->x, c.censored->y) <= bound &&
      r.entries.size() == c.entries.size())
    r.censored = c.censored;
  return r;
}

namespace {

using u128 = unsigned __int128;

// Residue arithmetic modulo p^N on two backends.
struct Wide {
  using T = u128;
  static T from(const mpz_class& z) {
    mpz_class lo = z & mpz_class(~0UL), hi = z >> 64;
    return (static_cast<u128>(hi.get_ui()) << 64) | lo.get_ui();
  }
  static T mod(const T& a, const T& m) { return a % m; }
  static T add_mod(const T& a, const T& b, const T& m) {
    T s = a + b;
    return s >= m ? s - m : s;
  }
  static std::uint64_t mod_u64(const T& a, std::uint64_t m) { return static_cast<std::uint64_t>(a % m); }
  static bool le_u64(const T& a, std::uint64_t b) { return a <= b; }
  static std::uint64_t to_u64(const T& a) { return static_cast<std::uint64_t>(a); }
  static bool is_zero(const T& a) { return a == 0; }
  static long val(T d, unsigned long p) {
    long v = 0;
    if (p == 2) {
      std::uint64_t lo = static_cast<std::uint64_t>(d);
      if (lo) return __builtin_ctzll(lo);
      return 64 + __builtin_ctzll(static_cast<std::uint64_t>(d >> 64));
    }
    while (d % p == 0) {
      d /= p;
      ++v;
    }
    return v;
  }
  static T sub_small(const T& c, std::int64_t x, const T& m) {
    // (c - x) mod m for 0 <= c < m and |x| < m
    if (x >= 0) {
      T ux = static_cast<T>(x);
      return c >= ux ? c - ux : c + (m - ux);
    }
    return add_mod(c, static_cast<T>(-x), m);
  }
};

struct Big {
  using T = mpz_class;
  static T from(const mpz_class& z) { return z; }
  static T mod(const T& a, const T& m) {
    T r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
  }
  static T add_mod(const T& a, const T& b, const T& m) {
    T s = a + b;
    if (s >= m) s -= m;
    return s;
  }
  static std::uint64_t mod_u64(const T& a, std::uint64_t m) {
    return mpz_fdiv_ui(a.get_mpz_t(), static_cast<unsigned long>(m));
  }
  static bool le_u64(const T& a, std::uint64_t b) { return cmp(a, static_cast<unsigned long>(b)) <= 0; }
  static std::uint64_t to_u64(const T& a) { return a.get_ui(); }
  static bool is_zero(const T& a) { return a == 0; }
  static long val(const T& d, unsigned long p) { return vp(d, p); }
  static T sub_small(const T& c, std::int64_t x, const T& m) {
    T r = c - static_cast<long>(x);
    if (r < 0) r += m;
    if (r >= m) r -= m;
    return r;
  }
};

struct LevelBest {
  bool set = false;
  std::uint64_t h = 0, ax = 0;
  bool neg = false;
  std::int64_t x = 0;
  std::uint64_t y = 0;
};

void offer_level(LevelBest& b, Norm norm, std::int64_t x, std::uint64_t y) {
  std::uint64_t ax = static_cast<std::uint64_t>(x < 0 ? -x : x);
  std::uint64_t h = norm == Norm::Sup ? std::max(ax, y) : ax * y;
  bool neg = x < 0;
  if (b.set) {
    if (h != b.h) {
      if (h > b.h) return;
    } else if (ax != b.ax) {
      if (ax > b.ax) return;
    } else if (neg != b.neg) {
      if (neg) return;
    } else {
      return;  // y only grows during the scan
    }
  }
  b = {true, h, ax, neg, x, y};
}

template <class A>
void oracle_scan(const PAdicNumber& xi, Norm norm, std::uint64_t B, std::vector<LevelBest>& best) {
  using T = typename A::T;
  const unsigned long p = xi.p();
  const long N = static_cast<long>(xi.precision());
  std::vector<T> pw(static_cast<std::size_t>(N) + 1);
  for (long v = 0; v <= N; ++v) pw[static_cast<std::size_t>(v)] = A::from(ipow(p, static_cast<unsigned long>(v)));
  const T M = pw[static_cast<std::size_t>(N)];
  const T R = A::from(xi.value());
  T c_full = A::from(mpz_class(0));
  for (std::uint64_t y = 1; y <= B; ++y) {
    c_full = A::add_mod(c_full, R, M);
    // p | y forces p | x on every level
    if (y % p == 0) continue;
    const std::uint64_t xb = norm == Norm::Sup ? B : B / y;
    if (xb < 1) break;
    const std::uint64_t wide = 2 * xb + 1;
    for (long v = 1; v <= N; ++v) {
      const T& Nv = pw[static_cast<std::size_t>(v)];
      if (A::le_u64(Nv, wide)) {
        // several class members within the bound: first coprime one by (|x|, x<0)
        const std::uint64_t nv = A::to_u64(Nv);
        const std::uint64_t c0 = A::mod_u64(c_full, nv);
        std::uint64_t pos = c0;                   // c0, c0 + nv, ...
        std::uint64_t negabs = nv - c0;           // |c0 - nv|, |c0 - 2nv|, ...
        std::int64_t found = 0;
        bool ok = false;
        while (pos <= xb || negabs <= xb) {
          std::int64_t x;
          if (pos <= xb && (pos <= negabs || negabs > xb)) {
            x = static_cast<std::int64_t>(pos);
            pos += nv;
          } else {
            x = -static_cast<std::int64_t>(negabs);
            negabs += nv;
          }
          if (x == 0) continue;
          if (std::gcd(static_cast<std::uint64_t>(x < 0 ? -x : x), y) == 1) {
            found = x;
            ok = true;
            break;
          }
        }
        if (!ok) break;
        offer_level(best[static_cast<std::size_t>(v)], norm, found, y);
        continue;
      }
      // at most one class member within the bound; it persists while the
      // class refines, up to its valuation
      const T c0 = A::mod(c_full, Nv);
      std::int64_t xs;
      if (A::le_u64(c0, xb)) {
        xs = static_cast<std::int64_t>(A::to_u64(c0));
      } else {
        T diff = Nv - c0;
        if (!A::le_u64(diff, xb)) break;
        xs = -static_cast<std::int64_t>(A::to_u64(diff));
      }
      if (xs == 0 || std::gcd(static_cast<std::uint64_t>(xs < 0 ? -xs : xs), y) != 1) break;
      T d = A::sub_small(c_full, xs, M);
      long w = A::is_zero(d) ? N : std::min(N, A::val(d, p));
      for (long u = v; u <= w; ++u) offer_level(best[static_cast<std::size_t>(u)], norm, xs, y);
      break;
    }
  }
}

}  // namespace

BestApproxChain oracle_chain(const PAdicNumber& xi, Norm norm, long height_bound, const OracleLimits& limits) {
  if (height_bound < 1) throw InputError("height bound must be positive");
  long cap = norm == Norm::Sup ? limits.max_sup_bound : limits.max_mult_bound;
  if (height_bound > cap)
    throw BudgetError("height bound " + std::to_string(height_bound) + " exceeds the oracle limit " +
                      std::to_string(cap));
  const long N = static_cast<long>(xi.precision());
  std::vector<LevelBest> best(static_cast<std::size_t>(N) + 1);
  const std::uint64_t B = static_cast<std::uint64_t>(height_bound);
  mpz_class M = ipow(xi.p(), static_cast<unsigned long>(N));
  if (mpz_sizeinbase(M.get_mpz_t(), 2) <= 126)
    oracle_scan<Wide>(xi, norm, B, best);
  else
    oracle_scan<Big>(xi, norm, B, best);

  BestApproxChain c;
  c.norm = norm;
  c.p = xi.p();
  c.precision_ceiling = static_cast<std::size_t>(N);
  long v = 1;
  while (v <= N && best[static_cast<std::size_t>(v)].set) {
    const LevelBest& b = best[static_cast<std::size_t>(v)];
    ApproxPair a = make_pair(xi, mpz_class(static_cast<long>(b.x)), mpz_class(static_cast<unsigned long>(b.y)));
    if (!a.val.is_exact()) {
      c.censored = std::move(a);
      break;
    }
    v = a.val.value + 1;
    push_staircase(c, std::move(a));
  }
  return c;
}

namespace {

// Largest m with p^m * lo <= hi (Sup) or p^(2m) * lo <= hi (Mult).
long scale_room(Norm norm, unsigned long p, const mpz_class& lo, const mpz_class& hi) {
  if (lo > hi) return -1;
  mpz_class q = hi / lo;
  long m = floor_log(q, p);
  return norm == Norm::Mult ? m / 2 : m;
}

}  // namespace

std::vector<std::size_t> dominant_indices(const BestApproxChain& c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < c.entries.size(); ++i) {
    if (out.empty()) {
      out.push_back(i);
      continue;
    }
    std::size_t w = out.back();
    long m = scale_room(c.norm, c.p, c.height(w), c.height(i));
    if (c.entries[i].val.value > c.entries[w].val.value + m) out.push_back(i);
  }
  return out;
}

UniformValue uniform_minimum_from_chain(const BestApproxChain& c, const mpz_class& bound) {
  if (bound < 1) throw InputError("bound must be positive");
  UniformValue u;
  // below the first entry every pair has valuation 0
  u.pair = {1, 1, Valuation::exact(0)};
  u.valuation = 0;
  u.source = -1;
  bool have = false;
  for (std::size_t j = 0; j < c.entries.size(); ++j) {
    mpz_class h = c.height(j);
    if (h > bound) continue;
    long m = scale_room(c.norm, c.p, h, bound);
    long val = c.entries[j].val.value + m;
    if (!have || val > u.valuation) {
      mpz_class M = ipow(c.p, static_cast<unsigned long>(m));
      u.pair = c.entries[j];
      u.pair.x *= M;
      u.pair.y *= M;
      u.pair.val = Valuation::exact(val);
      u.valuation = val;
      u.source = static_cast<long>(j);
      have = true;
    }
  }
  if (c.censored && norm_height(c.norm, c.censored->x, c.censored->y) <= bound) u.censored = true;
  return u;
}

UniformValue uniform_minimum_direct(const PAdicNumber& xi, Norm norm, long bound, long max_bound) {
  if (bound < 1) throw InputError("bound must be positive");
  if (bound > max_bound)
    throw BudgetError("bound " + std::to_string(bound) + " exceeds the enumeration budget");
  const unsigned long p = xi.p();
  const long N = static_cast<long>(xi.precision());
  UniformValue u;
  bool have = false;
  auto consider = [&](std::int64_t x, std::uint64_t y) {
    ApproxPair a = make_pair(xi, mpz_class(static_cast<long>(x)), mpz_class(static_cast<unsigned long>(y)));
    long val = a.val.value;
    bool cens = !a.val.is_exact();
    if (!have || val > u.valuation) {
      u.pair = std::move(a);
      u.valuation = val;
      u.censored = cens;
      have = true;
    }
  };
  const std::uint64_t B = static_cast<std::uint64_t>(bound);
  for (std::uint64_t y = 1; y <= B; ++y) {
    const std::uint64_t xb = norm == Norm::Sup ? B : B / y;
    if (xb < 1) break;
    const mpz_class cy = xi.value() * static_cast<unsigned long>(y);
    // deepest level whose class holds a nonzero x with |x| <= xb
    std::int64_t xbest = 0;
    bool any = false;
    for (long v = 1; v <= N; ++v) {
      mpz_class Nv = ipow(p, static_cast<unsigned long>(v));
      mpz_class c0;
      mpz_fdiv_r(c0.get_mpz_t(), cy.get_mpz_t(), Nv.get_mpz_t());
      mpz_class cand = c0 == 0 ? Nv : c0;
      mpz_class other = c0 - Nv;
      if (cmpabs(other, cand) < 0) cand = other;
      if (cmpabs(cand, mpz_class(static_cast<unsigned long>(xb))) > 0) break;
      xbest = cand.get_si();
      any = true;
      if (Nv > 2 * mpz_class(static_cast<unsigned long>(xb))) break;  // unique member from here on
    }
    if (!any) {
      // level 0: every nonzero x qualifies
      consider(1, y);
      continue;
    }
    consider(xbest, y);
  }
  return u;
}

double uniform_exponent(Norm norm, long valuation, const mpz_class& bound, unsigned long p) {
  double lx = ln(bound);
  if (norm == Norm::Mult) lx *= 0.5;
  return static_cast<double>(valuation) * std::log(static_cast<double>(p)) / lx;
}

}  // namespace padiclab
