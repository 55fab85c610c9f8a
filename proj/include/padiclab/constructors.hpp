#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padiclab/padic.hpp"

namespace padiclab {

constexpr std::size_t kDefaultDigitCap = 1000000;

struct Rational {
  mpz_class num = 0;
  mpz_class den = 1;
};

// Accepts "a", "a/b" or a terminating decimal such as "2.5".
Rational parse_rational(const std::string& s);
double to_double(const Rational& r);

struct LacunarySpec {
  unsigned long p = 2;
  std::vector<std::uint64_t> exponents;
};

// "pow:<d>" or "list:<a0,a1,...>"
std::vector<std::uint64_t> parse_growth(const std::string& spec, std::size_t terms);

// Indices k past the first half where a_{k+1} < 2 a_k.
std::vector<std::string> lacunary_warnings(const LacunarySpec& spec);

PAdicNumber build_lacunary(const LacunarySpec& spec, std::size_t digit_cap = kDefaultDigitCap);

PAdicNumber build_factorial(unsigned long p, unsigned terms, std::size_t digit_cap = kDefaultDigitCap);

PAdicNumber build_digit_rule(unsigned long p, const std::string& rule, std::size_t precision,
                             std::uint64_t seed = 0);

struct SchneiderState {
  unsigned long p = 2;
  // pn[i], qn[i] hold p_{i-1}, q_{i-1}
  std::vector<mpz_class> pn{1, 0};
  std::vector<mpz_class> qn{0, 1};
  // g[i] holds g_{i+1}
  std::vector<long> g;
  // ledger[i] holds v(L_{i-1}); v(L_{-1}) = 0
  std::vector<long> ledger{0};
  // mu[i] holds the exponent used to choose g_{i+2}, when exponent driven
  std::vector<Rational> mu;

  explicit SchneiderState(unsigned long p_ = 2) : p(p_) {}
  // index of the last pair
  long last() const { return static_cast<long>(pn.size()) - 2; }
  const mpz_class& P(long n) const { return pn[static_cast<std::size_t>(n + 1)]; }
  const mpz_class& Q(long n) const { return qn[static_cast<std::size_t>(n + 1)]; }
  mpz_class H(long n) const;
  // v(L_n), available for n <= last() - 1 and for n = last() once g_{last+1} is known
  long L(long n) const { return ledger.at(static_cast<std::size_t>(n + 1)); }
  bool has_L(long n) const { return static_cast<std::size_t>(n + 1) < ledger.size(); }
  long g_at(long n) const { return g.at(static_cast<std::size_t>(n - 1)); }
};

SchneiderState schneider_step(SchneiderState state, long g_next);

// g_{n+1}: largest g with p^g <= H_n^mu p^{-v(L_{n-1})}.
long schneider_exponent(const SchneiderState& s, const Rational& mu);

// "const:<mu>", "list:<m1,m2*k,...>" (a value followed by *k repeats), or
// "blocks:<base>,<spike>[,<count>]" with block j of base values of length 2^j
// followed by one spike.
std::vector<Rational> parse_mu_seq(const std::string& spec, std::size_t steps);

struct SchneiderResult {
  SchneiderState state;
  PAdicNumber xi;
};

// Builds pairs n = 1..steps; mu_seq[n-1] selects g_{n+1}.
SchneiderResult schneider_exponent_driven(unsigned long p, const std::vector<Rational>& mu_seq, std::size_t steps,
                                          long g1 = 1, const Rational& epsilon = {1, 2},
                                          std::size_t digit_cap = kDefaultDigitCap);

// p_n/q_n for the smallest n with v(L_n) >= precision, at that precision.
PAdicNumber schneider_xi(const SchneiderState& s, std::size_t precision);

struct SandwichCheck {
  long n = 0;
  bool lower = false;  // H_n^{-mu} <= L_n
  bool upper = false;  // L_n <= p H_n^{-mu}
};

std::vector<SandwichCheck> schneider_sandwich(const SchneiderState& s);

struct SurgerySpec {
  Rational t{3, 2};
  Rational mu{6, 1};
  long C = 0;
  std::vector<long> sigma;
};

struct SurgeryResult {
  PAdicNumber xi;
  std::vector<long> nu;
  std::vector<long> tau;
  std::vector<mpz_class> u;
  // u_partial[i] = u_1 + ... + u_i, u_partial[0] = 0
  std::vector<mpz_class> u_partial;
};

void surgery_positions(const SurgerySpec& spec, std::vector<long>& nu, std::vector<long>& tau);

SurgeryResult surgery_transform(const PAdicNumber& zeta, const SurgerySpec& spec);

std::vector<ApproxPair> surgery_pairs(const PAdicNumber& xi, const std::vector<ApproxPair>& x_pairs,
                                      const std::vector<mpz_class>& u_partials);

struct SurgerySource {
  std::vector<long> sigma;
  // (p_n, q_n) at the spike indices, measured against zeta
  std::vector<ApproxPair> x_pairs;
};

// sigma_j = ceil(log_p H_{n_j}) for the given spike indices n_j.
SurgerySource surgery_source_from_schneider(const SchneiderState& s, const std::vector<long>& spikes,
                                            const PAdicNumber& zeta);

struct SurgeryApproximant {
  long j = 0;
  // "N" for the truncation (N_j, 1), "y" for a transplanted pair
  std::string kind;
  ApproxPair pair;
  // v ln p / ln max(|x|, |y|)
  double exponent = 0;
};

std::vector<SurgeryApproximant> surgery_approximants(const PAdicNumber& xi, const SurgeryResult& r,
                                                     const std::vector<ApproxPair>& y_pairs);

}  // namespace padiclab
