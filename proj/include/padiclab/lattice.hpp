#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padiclab/padic.hpp"

namespace padiclab {

enum class Norm { Sup, Mult };

Norm parse_norm(const std::string& s);
std::string to_string(Norm n);

// Height used for ordering: max(|x|,|y|) for Sup, |xy| for Mult.
mpz_class norm_height(Norm norm, const mpz_class& x, const mpz_class& y);

struct ApproxLattice {
  unsigned long p = 2;
  long v = 0;
  ApproxPair b1;
  ApproxPair b2;
};

ApproxLattice lattice_at_level(const PAdicNumber& xi, long v);

ApproxPair best_at_level(const PAdicNumber& xi, long v, Norm norm);
ApproxPair best_sup_at_level(const PAdicNumber& xi, long v);
ApproxPair best_mult_at_level(const PAdicNumber& xi, long v);

struct BestApproxChain {
  Norm norm = Norm::Sup;
  unsigned long p = 2;
  std::vector<ApproxPair> entries;
  // The pair that hit the precision ceiling, if the chain was cut there.
  std::optional<ApproxPair> censored;
  std::size_t precision_ceiling = 0;

  mpz_class height(std::size_t k) const { return norm_height(norm, entries[k].x, entries[k].y); }
};

BestApproxChain chain(const PAdicNumber& xi, Norm norm, long max_level);

// Entries whose height does not exceed the bound.
BestApproxChain restrict_chain(const BestApproxChain& c, const mpz_class& bound);

struct OracleLimits {
  long max_sup_bound = 100000;
  long max_mult_bound = 100000000;
};

BestApproxChain oracle_chain(const PAdicNumber& xi, Norm norm, long height_bound,
                             const OracleLimits& limits = {});

// Indices of entries that minimize |y xi - x|_p among all integer pairs
// (p-power multiples included) at some height.
std::vector<std::size_t> dominant_indices(const BestApproxChain& c);

struct UniformValue {
  ApproxPair pair;
  long valuation = 0;
  bool censored = false;
  // Index of the chain entry the minimizer is a multiple of, or -1.
  long source = -1;
};

// Best valuation over nonzero pairs of height <= bound (bound is X for Sup
// and X^2 for Mult) computed from the chain and its p-power multiples.
UniformValue uniform_minimum_from_chain(const BestApproxChain& c, const mpz_class& bound);

// Same quantity by exhaustive enumeration.
UniformValue uniform_minimum_direct(const PAdicNumber& xi, Norm norm, long bound,
                                    long max_bound = 10000000);

// -log_p|.|_p / log_p X for the given bound.
double uniform_exponent(Norm norm, long valuation, const mpz_class& bound, unsigned long p);

}  // namespace padiclab
