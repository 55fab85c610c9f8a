#include "padiclab/exponents.hpp"

#include <algorithm>
#include <cmath>

namespace padiclab {

namespace {

// log of the height in exponent units: ln H or ln sqrt|xy|
double log_height(const BestApproxChain& c, std::size_t k) {
  double l = ln(c.height(k));
  return c.norm == Norm::Mult ? 0.5 * l : l;
}

}  // namespace

std::vector<PointwiseExponent> pointwise(const BestApproxChain& c) {
  if (c.entries.size() < 2) throw InputError("insufficient data: chain has fewer than 2 entries");
  const double lp = std::log(static_cast<double>(c.p));
  std::vector<PointwiseExponent> out(c.entries.size());
  for (std::size_t k = 0; k < c.entries.size(); ++k) {
    out[k].k = k;
    double lh = log_height(c, k);
    if (lh > 0) out[k].tau = static_cast<double>(c.entries[k].val.value) * lp / lh;
  }
  auto dom = dominant_indices(c);
  for (std::size_t i = 0; i + 1 < dom.size(); ++i) {
    std::size_t k = dom[i], n = dom[i + 1];
    double vk = static_cast<double>(c.entries[k].val.value) * lp;
    out[k].uniform_term = (vk - log_height(c, k)) / log_height(c, n);
  }
  return out;
}

std::size_t burn_in_index(std::size_t n, double frac) {
  if (!(frac >= 0 && frac < 1)) throw InputError("burn-in fraction must lie in [0, 1)");
  auto b = static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n) - 1e-9));
  return std::max<std::size_t>(2, b);
}

TailEstimate estimate_tail(const BestApproxChain& c, double burn_in_frac) {
  TailEstimate t;
  t.pointwise = pointwise(c);
  t.burn_in = burn_in_index(c.entries.size(), burn_in_frac);
  t.precision_limited = c.censored.has_value();
  for (std::size_t k = t.burn_in; k < t.pointwise.size(); ++k) {
    const auto& pw = t.pointwise[k];
    if (pw.tau) t.mu = t.mu ? std::max(*t.mu, *pw.tau) : *pw.tau;
    if (pw.uniform_term) {
      double h = 1 + *pw.uniform_term;
      t.hat_mu = t.hat_mu ? std::min(*t.hat_mu, h) : h;
    }
  }
  return t;
}

ExponentReport estimate_classical(const BestApproxChain& chain_sup, double burn_in_frac) {
  return make_report(&chain_sup, nullptr, burn_in_frac);
}

ExponentReport estimate_multiplicative(const BestApproxChain& chain_mult, double burn_in_frac) {
  return make_report(nullptr, &chain_mult, burn_in_frac);
}

ExponentReport make_report(const BestApproxChain* chain_sup, const BestApproxChain* chain_mult, double burn_in_frac) {
  if (!chain_sup && !chain_mult) throw InputError("no chain given");
  ExponentReport r;
  if (chain_sup) {
    if (chain_sup->norm != Norm::Sup) throw InputError("classical estimate needs a sup-norm chain");
    TailEstimate t = estimate_tail(*chain_sup, burn_in_frac);
    r.p = chain_sup->p;
    r.mu = t.mu;
    r.hat_mu = t.hat_mu;
    r.burn_in = t.burn_in;
    r.precision_limited = t.precision_limited;
    r.pointwise = std::move(t.pointwise);
  }
  if (chain_mult) {
    if (chain_mult->norm != Norm::Mult) throw InputError("multiplicative estimate needs a mult-norm chain");
    if (chain_sup && chain_sup->p != chain_mult->p) throw InputError("chains use different primes");
    TailEstimate t = estimate_tail(*chain_mult, burn_in_frac);
    r.p = chain_mult->p;
    r.mu_times = t.mu;
    r.hat_mu_times = t.hat_mu;
    r.burn_in_mult = t.burn_in;
    if (!chain_sup) r.burn_in = t.burn_in;
    r.precision_limited = r.precision_limited || t.precision_limited;
    r.pointwise_mult = std::move(t.pointwise);
  }
  return r;
}

UniformCrossCheck cross_check_uniform(const PAdicNumber& xi, const BestApproxChain& c, std::size_t sample_count,
                                      long max_bound, double tol) {
  UniformCrossCheck out;
  auto pw = pointwise(c);
  auto dom = dominant_indices(c);
  std::vector<std::size_t> below;  // dominant entries with an in-budget successor
  for (std::size_t i = 0; i + 1 < dom.size(); ++i)
    if (c.height(dom[i + 1]) - 1 <= max_bound) below.push_back(i);
  std::size_t first = below.size() > sample_count ? below.size() - sample_count : 0;
  for (std::size_t s = first; s < below.size(); ++s) {
    std::size_t i = below[s];
    UniformSample u;
    u.bound = c.height(dom[i + 1]) - 1;
    if (pw[dom[i]].uniform_term) u.liminf_term = 1 + *pw[dom[i]].uniform_term;
    UniformValue f = uniform_minimum_from_chain(c, u.bound);
    UniformValue d = uniform_minimum_direct(xi, c.norm, u.bound.get_si(), max_bound);
    u.formula_valuation = f.valuation;
    u.direct_valuation = d.valuation;
    u.formula_exponent = uniform_exponent(c.norm, f.valuation, u.bound, c.p);
    u.direct_exponent = uniform_exponent(c.norm, d.valuation, u.bound, c.p);
    u.censored = f.censored || d.censored;
    if (u.censored) {
      u.note = "censored";
    } else {
      double diff = std::fabs(u.formula_exponent - u.direct_exponent);
      out.max_discrepancy = std::max(out.max_discrepancy, diff);
      if (u.formula_valuation != u.direct_valuation || diff > tol) out.agree = false;
    }
    out.samples.push_back(std::move(u));
  }
  if (c.censored && norm_height(c.norm, c.censored->x, c.censored->y) <= max_bound) {
    UniformSample u;
    u.bound = norm_height(c.norm, c.censored->x, c.censored->y);
    UniformValue f = uniform_minimum_from_chain(c, u.bound);
    UniformValue d = uniform_minimum_direct(xi, c.norm, u.bound.get_si(), max_bound);
    u.formula_valuation = f.valuation;
    u.direct_valuation = d.valuation;
    u.formula_exponent = uniform_exponent(c.norm, f.valuation, u.bound, c.p);
    u.direct_exponent = uniform_exponent(c.norm, d.valuation, u.bound, c.p);
    u.censored = f.censored && d.censored;
    u.note = u.censored ? "censored" : "censoring not seen by both paths";
    if (!u.censored) out.agree = false;
    out.samples.push_back(std::move(u));
  }
  return out;
}

}  // namespace padiclab
