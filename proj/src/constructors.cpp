#include "padiclab/constructors.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace padiclab {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_u64(const std::string& s) {
  std::string t = trim(s);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
    throw InputError("expected a non-negative integer, got '" + s + "'");
  return std::stoull(t);
}

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw InputError("p = " + std::to_string(p) + " is not prime");
}

}  // namespace

Rational parse_rational(const std::string& s) {
  std::string t = trim(s);
  mpq_class q;
  auto slash = t.find('/');
  auto dot = t.find('.');
  try {
    if (dot != std::string::npos && slash == std::string::npos) {
      std::string whole = t.substr(0, dot), frac = t.substr(dot + 1);
      bool neg = !whole.empty() && whole[0] == '-';
      if (neg) whole = whole.substr(1);
      if (whole.empty()) whole = "0";
      if (frac.empty() || frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos)
        throw InputError("bad rational '" + s + "'");
      mpz_class num(whole + frac, 10), den = ipow(10, frac.size());
      q = mpq_class(neg ? mpz_class(-num) : num, den);
    } else {
      if (t.empty() || t.find_first_not_of("-0123456789/") != std::string::npos)
        throw InputError("bad rational '" + s + "'");
      q = mpq_class(t, 10);
      if (q.get_den() == 0) throw InputError("zero denominator in '" + s + "'");
    }
  } catch (const std::invalid_argument&) {
    throw InputError("bad rational '" + s + "'");
  }
  q.canonicalize();
  return {q.get_num(), q.get_den()};
}

double to_double(const Rational& r) { return mpq_class(r.num, r.den).get_d(); }

std::vector<std::uint64_t> parse_growth(const std::string& spec, std::size_t terms) {
  std::vector<std::uint64_t> a;
  if (spec.rfind("pow:", 0) == 0) {
    if (terms < 2) throw InputError("lacunary needs at least 2 terms");
    long double d = std::stold(spec.substr(4));
    if (!(d > 1)) throw InputError("growth base must exceed 1");
    a.push_back(0);
    if (terms > 1) a.push_back(std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(d))));
    for (std::size_t k = 2; k < terms; ++k) {
      long double v = std::pow(d, static_cast<long double>(k));
      if (v > 9e18L) throw InputError("exponent overflow in growth spec");
      a.push_back(static_cast<std::uint64_t>(std::llround(v)));
    }
  } else if (spec.rfind("list:", 0) == 0) {
    for (const auto& item : split(spec.substr(5), ',')) a.push_back(parse_u64(item));
    if (terms != 0 && terms != a.size())
      throw InputError("--terms does not match the length of the exponent list");
  } else {
    throw InputError("growth spec must be pow:<d> or list:<a0,a1,...>");
  }
  return a;
}

std::vector<std::string> lacunary_warnings(const LacunarySpec& spec) {
  std::vector<std::string> w;
  const auto& a = spec.exponents;
  for (std::size_t k = 1; k + 1 < a.size(); ++k)
    if (a[k + 1] < 2 * a[k])
      w.push_back("a_" + std::to_string(k + 1) + " = " + std::to_string(a[k + 1]) + " < 2 a_" +
                  std::to_string(k));
  return w;
}

PAdicNumber build_lacunary(const LacunarySpec& spec, std::size_t digit_cap) {
  require_prime(spec.p);
  const auto& a = spec.exponents;
  if (a.size() < 2) throw InputError("lacunary needs at least 2 exponents");
  if (a[0] != 0) throw InputError("lacunary exponents must start with a_0 = 0");
  for (std::size_t k = 0; k + 1 < a.size(); ++k)
    if (a[k + 1] <= a[k]) throw InputError("lacunary exponents must be strictly increasing");
  if (a.back() + 1 > digit_cap)
    throw BudgetError("precision " + std::to_string(a.back() + 1) + " exceeds the digit cap " +
                      std::to_string(digit_cap));
  std::vector<std::uint32_t> d(a.back() + 1, 0);
  for (auto e : a) d[e] = 1;
  return PAdicNumber::from_digits(spec.p, std::move(d));
}

PAdicNumber build_factorial(unsigned long p, unsigned terms, std::size_t digit_cap) {
  require_prime(p);
  if (terms < 2) throw InputError("factorial needs at least 2 terms");
  std::vector<std::uint64_t> pos;
  std::uint64_t f = 1;
  for (unsigned j = 1; j <= terms; ++j) {
    if (f > digit_cap) throw BudgetError("factorial precision exceeds the digit cap");
    f *= j;
    pos.push_back(f);
  }
  if (f + 1 > digit_cap)
    throw BudgetError("precision " + std::to_string(f + 1) + " exceeds the digit cap " + std::to_string(digit_cap));
  std::vector<std::uint32_t> d(f + 1, 0);
  for (auto e : pos) d[e] = 1;
  return PAdicNumber::from_digits(p, std::move(d));
}

PAdicNumber build_digit_rule(unsigned long p, const std::string& rule, std::size_t precision, std::uint64_t seed) {
  require_prime(p);
  if (precision < 1) throw InputError("precision must be at least 1");
  std::vector<std::uint32_t> d(precision, 0);
  if (rule == "thue-morse") {
    for (std::size_t i = 0; i < precision; ++i) d[i] = __builtin_popcountll(i) % 2 == 0 ? 1 : 0;
  } else if (rule == "random") {
    std::mt19937_64 gen(seed);
    for (auto& x : d) x = static_cast<std::uint32_t>(gen() % p);
  } else {
    throw InputError("unknown digit rule '" + rule + "'");
  }
  return PAdicNumber::from_digits(p, std::move(d));
}

mpz_class SchneiderState::H(long n) const {
  mpz_class a = abs(P(n)), b = abs(Q(n));
  return a > b ? a : b;
}

SchneiderState schneider_step(SchneiderState s, long g_next) {
  if (g_next < 1) throw InputError("g must be at least 1");
  const long n = s.last();
  mpz_class b = ipow(s.p, static_cast<unsigned long>(g_next));
  mpz_class pn1 = s.P(n) + b * s.P(n - 1);
  mpz_class qn1 = s.Q(n) + b * s.Q(n - 1);
  s.pn.push_back(std::move(pn1));
  s.qn.push_back(std::move(qn1));
  s.g.push_back(g_next);
  s.ledger.push_back(s.L(n - 1) + g_next);
  return s;
}

long schneider_exponent(const SchneiderState& s, const Rational& mu) {
  const long n = s.last();
  mpz_class Ha;
  mpz_pow_ui(Ha.get_mpz_t(), s.H(n).get_mpz_t(), mu.num.get_ui());
  long e = floor_log(Ha, s.p);
  return e / static_cast<long>(mu.den.get_ui()) - s.L(n - 1);
}

std::vector<Rational> parse_mu_seq(const std::string& spec, std::size_t steps) {
  std::vector<Rational> out;
  if (spec.rfind("const:", 0) == 0) {
    Rational r = parse_rational(spec.substr(6));
    out.assign(steps, r);
  } else if (spec.rfind("list:", 0) == 0) {
    for (const auto& item : split(spec.substr(5), ',')) {
      auto star = item.find('*');
      Rational r = parse_rational(item.substr(0, star));
      std::size_t count = star == std::string::npos ? 1 : parse_u64(item.substr(star + 1));
      for (std::size_t i = 0; i < count; ++i) out.push_back(r);
    }
    if (out.empty()) throw InputError("empty mu list");
    while (out.size() < steps) out.push_back(out.back());
  } else if (spec.rfind("blocks:", 0) == 0) {
    auto parts = split(spec.substr(7), ',');
    if (parts.size() < 2 || parts.size() > 3) throw InputError("blocks spec is blocks:<base>,<spike>[,<count>]");
    Rational base = parse_rational(parts[0]), spike = parse_rational(parts[1]);
    std::size_t count = parts.size() == 3 ? parse_u64(parts[2]) : 64;
    for (std::size_t j = 0; j < count && out.size() < steps; ++j) {
      for (std::size_t i = 0; i < (std::size_t{1} << std::min<std::size_t>(j, 40)) && out.size() < steps; ++i)
        out.push_back(base);
      out.push_back(spike);
    }
    while (out.size() < steps) out.push_back(base);
  } else {
    throw InputError("mu sequence must be const:, list: or blocks:");
  }
  out.resize(steps);
  return out;
}

SchneiderResult schneider_exponent_driven(unsigned long p, const std::vector<Rational>& mu_seq, std::size_t steps,
                                          long g1, const Rational& epsilon, std::size_t digit_cap) {
  require_prime(p);
  if (steps < 1) throw InputError("steps must be at least 1");
  if (mu_seq.size() < steps) throw InputError("mu sequence shorter than the number of steps");
  mpq_class floor_mu = mpq_class(2) + mpq_class(epsilon.num, epsilon.den);
  for (std::size_t i = 0; i < steps; ++i)
    if (mpq_class(mu_seq[i].num, mu_seq[i].den) < floor_mu)
      throw InputError("mu_" + std::to_string(i + 1) + " is below 2 + epsilon");
  SchneiderState s(p);
  s = schneider_step(std::move(s), g1);
  for (std::size_t n = 1; n <= steps; ++n) {
    const Rational& mu = mu_seq[n - 1];
    long g = schneider_exponent(s, mu);
    if (g < 1) throw InputError("step " + std::to_string(n) + ": exponent rule gives g = " + std::to_string(g));
    s.mu.push_back(mu);
    if (n < steps) {
      s = schneider_step(std::move(s), g);
    } else {
      // close the ledger for the last pair without building pair steps + 1
      s.g.push_back(g);
      s.ledger.push_back(s.L(s.last() - 1) + g);
    }
  }
  std::size_t prec = static_cast<std::size_t>(s.L(s.last()));
  if (prec > digit_cap) prec = digit_cap;
  PAdicNumber xi = from_rational(p, s.P(s.last()), s.Q(s.last()), prec);
  return {std::move(s), std::move(xi)};
}

PAdicNumber schneider_xi(const SchneiderState& s, std::size_t precision) {
  for (long n = 0; n <= s.last(); ++n)
    if (s.has_L(n) && s.L(n) >= static_cast<long>(precision)) return from_rational(s.p, s.P(n), s.Q(n), precision);
  throw InputError("ledger does not reach precision " + std::to_string(precision));
}

std::vector<SandwichCheck> schneider_sandwich(const SchneiderState& s) {
  std::vector<SandwichCheck> out;
  for (long n = 1; n <= s.last(); ++n) {
    if (!s.has_L(n) || static_cast<std::size_t>(n - 1) >= s.mu.size()) continue;
    const Rational& mu = s.mu[static_cast<std::size_t>(n - 1)];
    unsigned long a = mu.num.get_ui(), b = mu.den.get_ui();
    mpz_class Ha;
    mpz_pow_ui(Ha.get_mpz_t(), s.H(n).get_mpz_t(), a);
    long v = s.L(n);
    SandwichCheck c;
    c.n = n;
    c.lower = ipow(s.p, static_cast<unsigned long>(v) * b) <= Ha;
    c.upper = Ha <= ipow(s.p, static_cast<unsigned long>(v + 1) * b);
    out.push_back(c);
  }
  return out;
}

void surgery_positions(const SurgerySpec& spec, std::vector<long>& nu, std::vector<long>& tau) {
  if (spec.sigma.empty()) throw InputError("surgery needs at least one sigma");
  mpq_class t(spec.t.num, spec.t.den), mu(spec.mu.num, spec.mu.den);
  if (t < 1 || t > 2) throw InputError("t must lie in [1, 2]");
  if (mu <= 2) throw InputError("mu must exceed 2");
  nu.clear();
  tau.clear();
  long prev = -1;
  for (long s : spec.sigma) {
    mpq_class a = t * mu * s;
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
    long n = f.get_si() + spec.C;
    mpq_class b = mu * n;
    mpz_fdiv_q(f.get_mpz_t(), b.get_num_mpz_t(), b.get_den_mpz_t());
    long tt = f.get_si();
    if (!(prev < s && s < n && n < tt))
      throw InputError("surgery positions violate sigma_1 < nu_1 < tau_1 < sigma_2 < ...");
    nu.push_back(n);
    tau.push_back(tt);
    prev = tt;
  }
}

SurgeryResult surgery_transform(const PAdicNumber& zeta, const SurgerySpec& spec) {
  SurgeryResult r;
  surgery_positions(spec, r.nu, r.tau);
  if (static_cast<std::size_t>(r.tau.back()) >= zeta.precision())
    throw InputError("tau_" + std::to_string(r.tau.size()) + " = " + std::to_string(r.tau.back()) +
                     " is not below the source precision " + std::to_string(zeta.precision()));
  const unsigned long p = zeta.p();
  std::vector<std::uint32_t> d = zeta.digits();
  r.u_partial.push_back(0);
  for (std::size_t j = 0; j < r.nu.size(); ++j) {
    auto lo = static_cast<std::size_t>(r.nu[j]), hi = static_cast<std::size_t>(r.tau[j]);
    mpz_class block = residue(zeta, hi + 1) - residue(zeta, lo);
    r.u.push_back(block - ipow(p, lo) - ipow(p, hi));
    r.u_partial.push_back(r.u_partial.back() + r.u.back());
    for (std::size_t i = lo; i <= hi; ++i) d[i] = 0;
    d[lo] = 1;
    d[hi] = 1;
  }
  r.xi = PAdicNumber::from_digits(p, std::move(d));
  return r;
}

std::vector<ApproxPair> surgery_pairs(const PAdicNumber& xi, const std::vector<ApproxPair>& x_pairs,
                                      const std::vector<mpz_class>& u_partials) {
  if (u_partials.size() != x_pairs.size() && u_partials.size() != x_pairs.size() + 1)
    throw InputError("pairs and partial sums are misaligned");
  std::vector<ApproxPair> out;
  for (std::size_t j = 0; j < x_pairs.size(); ++j) {
    const auto& xp = x_pairs[j];
    out.push_back(make_pair(xi, xp.x - u_partials[j] * xp.y, xp.y));
  }
  return out;
}

SurgerySource surgery_source_from_schneider(const SchneiderState& s, const std::vector<long>& spikes,
                                            const PAdicNumber& zeta) {
  SurgerySource out;
  for (long n : spikes) {
    if (n < 1 || n > s.last()) throw InputError("spike index " + std::to_string(n) + " is outside the ledger");
    mpz_class H = s.H(n);
    long e = floor_log(H, s.p);
    if (ipow(s.p, static_cast<unsigned long>(e)) != H) ++e;
    out.sigma.push_back(e);
    out.x_pairs.push_back(make_pair(zeta, s.P(n), s.Q(n)));
  }
  return out;
}

std::vector<SurgeryApproximant> surgery_approximants(const PAdicNumber& xi, const SurgeryResult& r,
                                                     const std::vector<ApproxPair>& y_pairs) {
  std::vector<SurgeryApproximant> out;
  const double lp = std::log(static_cast<double>(xi.p()));
  auto add = [&](long j, const char* kind, ApproxPair a) {
    SurgeryApproximant s;
    s.j = j;
    s.kind = kind;
    double lh = ln(a.height_sup());
    s.exponent = lh > 0 ? static_cast<double>(a.val.value) * lp / lh : 0;
    s.pair = std::move(a);
    out.push_back(std::move(s));
  };
  for (std::size_t j = 0; j < r.nu.size(); ++j)
    add(static_cast<long>(j + 1), "N", make_pair(xi, truncation_integer(xi, static_cast<std::size_t>(r.nu[j])), 1));
  for (std::size_t j = 0; j < y_pairs.size(); ++j) add(static_cast<long>(j + 1), "y", y_pairs[j]);
  return out;
}

}  // namespace padiclab
