#include "padiclab/padic.hpp"

#include <algorithm>
#include <cmath>

namespace padiclab {

bool is_prime(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long vp(const mpz_class& n, unsigned long p) {
  if (n == 0) throw InputError("valuation of zero");
  if (p == 2) return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
  mpz_class rest;
  mpz_class pp(p);
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

mpz_class ipow(unsigned long p, unsigned long e) {
  mpz_class r;
  if (p == 2)
    mpz_setbit(r.get_mpz_t(), e);
  else
    mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

long floor_log(const mpz_class& n, unsigned long p) {
  if (n < 1) throw InputError("floor_log of non-positive integer");
  if (p == 2) return static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2)) - 1;
  long e = static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), static_cast<int>(std::min(p, 62UL))));
  if (p > 62) e = static_cast<long>(std::floor(ln(n) / std::log(static_cast<double>(p)))) + 1;
  while (e > 0 && ipow(p, static_cast<unsigned long>(e)) > n) --e;
  while (ipow(p, static_cast<unsigned long>(e + 1)) <= n) ++e;
  return e;
}

double ln(const mpz_class& n) {
  if (n <= 0) throw InputError("logarithm of non-positive integer");
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

namespace {

char digit_char(std::uint32_t d, unsigned long p) {
  if (d < 10) return static_cast<char>('0' + d);
  if (p <= 36) return static_cast<char>('a' + (d - 10));
  if (d < 36) return static_cast<char>('A' + (d - 10));
  return static_cast<char>('a' + (d - 36));
}

std::uint32_t char_digit(char c, unsigned long p) {
  if (c >= '0' && c <= '9') return static_cast<std::uint32_t>(c - '0');
  if (p <= 36) return static_cast<std::uint32_t>(c - 'a' + 10);
  if (c >= 'A' && c <= 'Z') return static_cast<std::uint32_t>(c - 'A' + 10);
  return static_cast<std::uint32_t>(c - 'a' + 36);
}

mpz_class digits_value(const std::vector<std::uint32_t>& digits, unsigned long p) {
  mpz_class v;
  if (p <= 62) {
    std::string s;
    s.reserve(digits.size());
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) s.push_back(digit_char(*it, p));
    mpz_set_str(v.get_mpz_t(), s.c_str(), static_cast<int>(p));
    return v;
  }
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    v *= p;
    v += *it;
  }
  return v;
}

}  // namespace

std::vector<std::uint32_t> to_digits(const mpz_class& value, unsigned long p, std::size_t precision) {
  std::vector<std::uint32_t> out(precision, 0);
  if (value == 0) return out;
  if (p <= 62) {
    std::string s = value.get_str(static_cast<int>(p));
    std::size_t n = std::min(s.size(), precision);
    for (std::size_t i = 0; i < n; ++i) out[i] = char_digit(s[s.size() - 1 - i], p);
    return out;
  }
  mpz_class v = value;
  for (std::size_t i = 0; i < precision && v != 0; ++i) {
    out[i] = static_cast<std::uint32_t>(mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), p));
  }
  return out;
}

PAdicNumber PAdicNumber::from_digits(unsigned long p, std::vector<std::uint32_t> digits) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (p > (1UL << 31)) throw InputError("p too large");
  if (digits.empty()) throw InputError("empty digit vector");
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (digits[i] >= p)
      throw InputError("digit " + std::to_string(digits[i]) + " at position " + std::to_string(i) +
                       " out of range for p = " + std::to_string(p));
  PAdicNumber xi;
  xi.p_ = p;
  xi.value_ = digits_value(digits, p);
  xi.digits_ = std::move(digits);
  return xi;
}

PAdicNumber PAdicNumber::from_residue(unsigned long p, const mpz_class& value, std::size_t precision) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (precision == 0) throw InputError("precision must be at least 1");
  mpz_class m = ipow(p, precision);
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), value.get_mpz_t(), m.get_mpz_t());
  PAdicNumber xi;
  xi.p_ = p;
  xi.digits_ = to_digits(r, p, precision);
  xi.value_ = r;
  return xi;
}

PAdicNumber from_rational(unsigned long p, const mpz_class& num, const mpz_class& den,
                          std::size_t precision) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
  if (den == 0) throw InputError("zero denominator");
  if (mpz_divisible_ui_p(den.get_mpz_t(), p)) throw InputError("p divides the denominator");
  if (precision == 0) throw InputError("precision must be at least 1");
  mpz_class m = ipow(p, precision);
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t());
  mpz_class r = num * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return PAdicNumber::from_residue(p, r, precision);
}

mpz_class residue(const PAdicNumber& xi, std::size_t v) {
  if (v > xi.precision())
    throw InputError("level " + std::to_string(v) + " exceeds precision " + std::to_string(xi.precision()));
  if (v == xi.precision()) return xi.value();
  mpz_class r;
  if (xi.p() == 2) {
    mpz_fdiv_r_2exp(r.get_mpz_t(), xi.value().get_mpz_t(), v);
  } else {
    mpz_class m = ipow(xi.p(), v);
    mpz_fdiv_r(r.get_mpz_t(), xi.value().get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

Valuation linear_form_valuation(const PAdicNumber& xi, const mpz_class& x, const mpz_class& y) {
  if (x == 0 && y == 0) throw InputError("linear form with x = y = 0");
  if (y == 0) return Valuation::exact(vp(x, xi.p()));
  long cap = static_cast<long>(xi.precision()) + vp(y, xi.p());
  mpz_class d = y * xi.value() - x;
  if (d == 0) return Valuation::at_least(cap);
  long v = vp(d, xi.p());
  if (v >= cap) return Valuation::at_least(cap);
  return Valuation::exact(v);
}

mpz_class truncation_integer(const PAdicNumber& xi, std::size_t cutoff) {
  if (cutoff >= xi.precision())
    throw InputError("cutoff " + std::to_string(cutoff) + " must be below precision " +
                     std::to_string(xi.precision()));
  return residue(xi, cutoff + 1);
}

mpz_class ApproxPair::height_sup() const {
  mpz_class ax = abs(x), ay = abs(y);
  return ax > ay ? ax : ay;
}

mpz_class ApproxPair::height_mult_sq() const { return abs(x) * abs(y); }

ApproxPair make_pair(const PAdicNumber& xi, mpz_class x, mpz_class y) {
  if (y < 0) {
    x = -x;
    y = -y;
  }
  ApproxPair a{std::move(x), std::move(y), {}};
  a.val = linear_form_valuation(xi, a.x, a.y);
  return a;
}

}  // namespace padiclab
