#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace padiclab {

// Raised for malformed input and violated preconditions.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a computation would exceed a configured budget.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool is_prime(unsigned long n);

// p-adic valuation of a nonzero integer.
long vp(const mpz_class& n, unsigned long p);

mpz_class ipow(unsigned long p, unsigned long e);

// Largest e with p^e <= n, for n >= 1.
long floor_log(const mpz_class& n, unsigned long p);

// Natural logarithm of a positive integer of any size.
double ln(const mpz_class& n);

struct Valuation {
  enum class Kind { Exact, AtLeast };
  Kind kind = Kind::Exact;
  long value = 0;

  static Valuation exact(long v) { return {Kind::Exact, v}; }
  static Valuation at_least(long v) { return {Kind::AtLeast, v}; }
  bool is_exact() const { return kind == Kind::Exact; }
  bool operator==(const Valuation&) const = default;
};

class PAdicNumber {
 public:
  PAdicNumber() = default;

  static PAdicNumber from_digits(unsigned long p, std::vector<std::uint32_t> digits);
  static PAdicNumber from_residue(unsigned long p, const mpz_class& value, std::size_t precision);

  unsigned long p() const { return p_; }
  std::size_t precision() const { return digits_.size(); }
  const std::vector<std::uint32_t>& digits() const { return digits_; }
  // Sum of digits[i] p^i over the full precision.
  const mpz_class& value() const { return value_; }

 private:
  unsigned long p_ = 2;
  std::vector<std::uint32_t> digits_;
  mpz_class value_;
};

PAdicNumber from_rational(unsigned long p, const mpz_class& num, const mpz_class& den,
                          std::size_t precision);

mpz_class residue(const PAdicNumber& xi, std::size_t v);

Valuation linear_form_valuation(const PAdicNumber& xi, const mpz_class& x, const mpz_class& y);

mpz_class truncation_integer(const PAdicNumber& xi, std::size_t cutoff);

// Base-p digits of 0 <= value < p^precision, little-endian, zero padded.
std::vector<std::uint32_t> to_digits(const mpz_class& value, unsigned long p, std::size_t precision);

struct ApproxPair {
  mpz_class x;
  mpz_class y;
  Valuation val;

  mpz_class height_sup() const;
  mpz_class height_mult_sq() const;
};

ApproxPair make_pair(const PAdicNumber& xi, mpz_class x, mpz_class y);

}  // namespace padiclab
