#pragma once

#include <optional>
#include <vector>

#include "padiclab/lattice.hpp"

namespace padiclab {

constexpr double kDefaultBurnIn = 0.2;

struct PointwiseExponent {
  std::size_t k = 0;
  // unset when the height is 1
  std::optional<double> tau;
  // Only set on dominant entries that have a dominant successor.
  std::optional<double> uniform_term;
};

// tau_k = v_k ln p / ln(height_k), with height H_k (Sup) or sqrt|x_k y_k| (Mult).
// uniform_term_k = (v_k ln p - ln height_k) / ln height_next, where next is
// the following dominant entry.
std::vector<PointwiseExponent> pointwise(const BestApproxChain& c);

// First tail index for a chain of n entries: max(2, ceil(frac * n)).
std::size_t burn_in_index(std::size_t n, double frac);

struct TailEstimate {
  std::optional<double> mu;
  std::optional<double> hat_mu;
  std::size_t burn_in = 0;
  bool precision_limited = false;
  std::vector<PointwiseExponent> pointwise;
};

// mu = max tau_k over the tail; hat = 1 + min uniform_term_k over the tail.
TailEstimate estimate_tail(const BestApproxChain& c, double burn_in_frac = kDefaultBurnIn);

struct ExponentReport {
  unsigned long p = 2;
  std::optional<double> mu, mu_times, hat_mu, hat_mu_times;
  std::size_t burn_in = 0;
  std::size_t burn_in_mult = 0;
  bool precision_limited = false;
  std::vector<PointwiseExponent> pointwise;
  std::vector<PointwiseExponent> pointwise_mult;
};

ExponentReport estimate_classical(const BestApproxChain& chain_sup, double burn_in_frac = kDefaultBurnIn);
ExponentReport estimate_multiplicative(const BestApproxChain& chain_mult, double burn_in_frac = kDefaultBurnIn);
ExponentReport make_report(const BestApproxChain* chain_sup, const BestApproxChain* chain_mult,
                           double burn_in_frac = kDefaultBurnIn);

struct UniformSample {
  // X for Sup, X^2 for Mult
  mpz_class bound;
  long formula_valuation = 0;
  long direct_valuation = 0;
  double formula_exponent = 0;
  double direct_exponent = 0;
  // 1 + uniform_term of the dominant entry below the sample
  std::optional<double> liminf_term;
  bool censored = false;
  bool skipped = false;
  std::string note;
};

struct UniformCrossCheck {
  std::vector<UniformSample> samples;
  double max_discrepancy = 0;
  bool agree = true;
};

// Samples X just below the last sample_count dominant heights whose bound fits
// the enumeration budget and compares the chain formula with direct search.
// A censored chain adds one sample at the censored height when it fits.
UniformCrossCheck cross_check_uniform(const PAdicNumber& xi, const BestApproxChain& c, std::size_t sample_count,
                                      long max_bound, double tol = 1e-9);

}  // namespace padiclab
