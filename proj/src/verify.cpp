#include "padiclab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace padiclab {

namespace {

CheckResult make_check(const std::string& name, double margin, double tol) {
  CheckResult c;
  c.name = name;
  c.margin = margin;
  c.passed = margin >= -tol;
  return c;
}

CheckResult skipped(const std::string& name, const std::string& why) {
  CheckResult c;
  c.name = name;
  c.passed = true;
  c.inputs["skipped"] = why;
  return c;
}

void echo(CheckResult& c, const char* key, const std::optional<double>& v) {
  if (v)
    c.inputs[key] = *v;
  else
    c.inputs[key] = nullptr;
}

}  // namespace

std::vector<CheckResult> check_chain_bounds(const ExponentReport& r, double tol) {
  std::vector<CheckResult> out;
  auto add = [&](const std::string& name, bool ready, double margin) {
    CheckResult c = ready ? make_check(name, margin, tol) : skipped(name, "missing estimate");
    echo(c, "mu", r.mu);
    echo(c, "mu_times", r.mu_times);
    echo(c, "hat_mu", r.hat_mu);
    echo(c, "hat_mu_times", r.hat_mu_times);
    c.inputs["tolerance"] = tol;
    out.push_back(std::move(c));
  };
  add("mu_at_least_2", r.mu.has_value(), r.mu.value_or(0) - 2);
  add("mu_at_most_mu_times", r.mu && r.mu_times, r.mu_times.value_or(0) - r.mu.value_or(0));
  add("mu_times_at_most_2mu", r.mu && r.mu_times, 2 * r.mu.value_or(0) - r.mu_times.value_or(0));
  add("hat_mu_at_least_2", r.hat_mu.has_value(), r.hat_mu.value_or(0) - 2);
  add("hat_mu_at_most_2", r.hat_mu.has_value(), 2 - r.hat_mu.value_or(0));
  add("hat_mu_times_at_most_4", r.hat_mu_times.has_value(), 4 - r.hat_mu_times.value_or(0));
  add("hat_mu_at_most_mu", r.mu && r.hat_mu, r.mu.value_or(0) - r.hat_mu.value_or(0));
  add("hat_mu_times_at_most_mu_times", r.mu_times && r.hat_mu_times,
      r.mu_times.value_or(0) - r.hat_mu_times.value_or(0));
  return out;
}

std::vector<CheckResult> check_endlich(const ExponentReport& r, double tol) {
  std::vector<CheckResult> out;
  const bool ready = r.mu_times && r.hat_mu_times;
  const double m = r.mu_times.value_or(0), h = r.hat_mu_times.value_or(0);
  auto finish = [&](CheckResult c) {
    echo(c, "mu_times", r.mu_times);
    echo(c, "hat_mu_times", r.hat_mu_times);
    c.inputs["tolerance"] = tol;
    out.push_back(std::move(c));
  };
  if (!ready) {
    finish(skipped("endlich_andere", "missing estimate"));
  } else if (m <= 2) {
    finish(skipped("endlich_andere", "mu_times <= 2"));
  } else {
    CheckResult c = make_check("endlich_andere", 3 + 2 / (m - 2) - h, tol);
    c.inputs["bound"] = 3 + 2 / (m - 2);
    finish(std::move(c));
  }
  if (!ready) {
    finish(skipped("endlich_jnik", "missing estimate"));
  } else {
    CheckResult c = make_check("endlich_jnik", m - (h * h - 3 * h + 3), tol);
    c.inputs["bound"] = h * h - 3 * h + 3;
    finish(std::move(c));
  }
  if (!r.hat_mu_times) {
    finish(skipped("endlich_bndere", "missing estimate"));
  } else {
    const double bound = (5 + std::sqrt(5.0)) / 2;
    CheckResult c = make_check("endlich_bndere", bound - h, tol);
    c.inputs["bound"] = bound;
    finish(std::move(c));
  }
  return out;
}

CheckResult check_lacunary_sandwich(const ExponentReport& r, double c, double d, double tol) {
  if (!(d > 1)) throw InputError("lacunary sandwich needs d > 1");
  if (!(c > 0)) throw InputError("lacunary sandwich needs c > 0");
  const double lo = 3 - (std::isinf(c) ? 0 : 1 / c);
  const double hi = 3 + (std::isinf(d) ? 0 : 1 / (d - 1));
  CheckResult out;
  if (!r.hat_mu_times) {
    out = skipped("lacunary_sandwich", "missing estimate");
  } else {
    const double h = *r.hat_mu_times;
    out = make_check("lacunary_sandwich", std::min(h - lo, hi - h), tol);
    out.inputs["conjecture_gap"] = h - lo;
  }
  out.inputs["c"] = std::isinf(c) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(c);
  out.inputs["d"] = std::isinf(d) ? nlohmann::ordered_json("inf") : nlohmann::ordered_json(d);
  out.inputs["lower"] = lo;
  out.inputs["upper"] = hi;
  echo(out, "hat_mu_times", r.hat_mu_times);
  out.inputs["tolerance"] = tol;
  return out;
}

CheckResult check_padicle(const std::vector<ApproxPair>& pairs, unsigned long p) {
  CheckResult out;
  out.name = "padicle";
  const double lp = std::log(static_cast<double>(p)), l2 = std::log(2.0);
  std::vector<std::size_t> idx;
  std::vector<double> lx;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!pairs[i].val.is_exact()) continue;
    idx.push_back(i);
    lx.push_back(ln(pairs[i].height_sup()));
  }
  double worst = std::numeric_limits<double>::infinity();
  std::size_t compared = 0, dependent = 0, exact_checks = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      const ApproxPair& P = pairs[idx[a]];
      const ApproxPair& Q = pairs[idx[b]];
      const long v = std::min(P.val.value, Q.val.value);
      // positive slack means the pair of inequalities fails, as the lemma requires
      double slack = l2 + lx[a] + lx[b] - static_cast<double>(v) * lp;
      if (slack > 1e-6) {
        ++compared;
        worst = std::min(worst, slack);
        continue;
      }
      if (P.x * Q.y == Q.x * P.y) {
        ++dependent;
        continue;
      }
      ++compared;
      ++exact_checks;
      worst = std::min(worst, slack);
      if (ipow(p, static_cast<unsigned long>(v)) > 2 * P.height_sup() * Q.height_sup()) {
        if (out.passed) {
          out.inputs["violation"] = {{"i", idx[a]}, {"j", idx[b]}};
        }
        out.passed = false;
      }
    }
  }
  out.margin = std::isinf(worst) ? 0 : worst;
  out.inputs["pairs"] = pairs.size();
  out.inputs["compared"] = compared;
  out.inputs["dependent_skipped"] = dependent;
  out.inputs["exact_checks"] = exact_checks;
  return out;
}

CheckResult check_korollar(const BestApproxChain& chain_sup) {
  if (chain_sup.norm != Norm::Sup) throw InputError("korollar needs a sup-norm chain");
  if (chain_sup.entries.size() < 2) throw InputError("korollar needs a chain with at least 2 entries");
  CheckResult out;
  out.name = "korollar";
  const unsigned long p = chain_sup.p;
  const double lp = std::log(static_cast<double>(p));
  auto dom = dominant_indices(chain_sup);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t checked = 0, shadowed = 0;
  for (std::size_t i = 0; i + 1 < dom.size(); ++i) {
    const ApproxPair& a = chain_sup.entries[dom[i]];
    const long v = a.val.value;
    const mpz_class pv = ipow(p, static_cast<unsigned long>(v));
    if (mpz_divisible_p(a.x.get_mpz_t(), pv.get_mpz_t())) {
      // (0, 1) reaches the same level at height 1
      ++shadowed;
      continue;
    }
    const mpz_class Hk = chain_sup.height(dom[i]), Hn = chain_sup.height(dom[i + 1]);
    const mpz_class prod = Hk * Hn;
    const bool lower = pv <= 2 * prod;
    const bool upper = prod <= (p + 1) * pv;
    ++checked;
    const double lv = static_cast<double>(v) * lp, lprod = ln(prod);
    worst = std::min({worst, lprod + std::log(2.0) - lv, std::log(static_cast<double>(p + 1)) + lv - lprod});
    if (!(lower && upper) && out.passed) {
      out.passed = false;
      out.inputs["violation"] = {{"k", dom[i]}, {"next", dom[i + 1]}, {"lower", lower}, {"upper", upper}};
    }
  }
  out.margin = std::isinf(worst) ? 0 : worst;
  out.inputs["entries"] = chain_sup.entries.size();
  out.inputs["dominant"] = dom.size();
  out.inputs["checked"] = checked;
  out.inputs["axis_shadowed"] = shadowed;
  return out;
}

CheckResult diagnose_neu(const BestApproxChain& chain_mult, const ExponentReport& r, double tol) {
  CheckResult out;
  out.name = "neu";
  out.diagnostic = true;
  auto dom = dominant_indices(chain_mult);
  std::size_t start = r.burn_in_mult;
  nlohmann::ordered_json sides = nlohmann::ordered_json::array();
  std::size_t x_pairs = 0, y_pairs = 0;
  char prev = 0;
  for (std::size_t k : dom) {
    if (k < start) continue;
    const ApproxPair& a = chain_mult.entries[k];
    const double lr = ln(abs(a.x)) - ln(abs(a.y));
    const char side = lr >= 0 ? 'x' : 'y';
    sides.push_back({{"k", k}, {"log_ratio", lr}, {"side", std::string(1, side)}});
    if (prev == side) (side == 'x' ? x_pairs : y_pairs)++;
    prev = side;
  }
  out.inputs["x_side_pairs"] = x_pairs;
  out.inputs["y_side_pairs"] = y_pairs;
  out.inputs["hypothesis_i"] = x_pairs > 0;
  out.inputs["hypothesis_ii"] = y_pairs > 0;
  echo(out, "hat_mu_times", r.hat_mu_times);
  out.inputs["entries"] = sides;
  const double h = r.hat_mu_times.value_or(0);
  out.margin = 3 - h;
  out.passed = !((x_pairs > 0 || y_pairs > 0) && r.hat_mu_times && h > 3 + tol);
  return out;
}

CheckResult check_hilfl(const BestApproxChain& chain_mult, const ExponentReport& r, double tol) {
  if (!r.mu_times || !r.hat_mu_times) return skipped("hilfl", "missing estimate");
  if (*r.hat_mu_times <= 1) return skipped("hilfl", "hat_mu_times <= 1");
  const double bound = (*r.mu_times - 1) / (*r.hat_mu_times - 1);
  auto dom = dominant_indices(chain_mult);
  double worst = std::numeric_limits<double>::infinity();
  std::size_t checked = 0;
  for (std::size_t i = 0; i + 1 < dom.size(); ++i) {
    if (dom[i] < r.burn_in_mult) continue;
    const double a = ln(chain_mult.height(dom[i])), b = ln(chain_mult.height(dom[i + 1]));
    if (a <= 0) continue;
    worst = std::min(worst, bound - b / a);
    ++checked;
  }
  if (checked == 0) return skipped("hilfl", "no consecutive entries past the burn-in");
  CheckResult out = make_check("hilfl", worst, tol);
  out.inputs["bound"] = bound;
  out.inputs["checked"] = checked;
  out.inputs["tolerance"] = tol;
  return out;
}

bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.diagnostic || c.passed; });
}

}  // namespace padiclab
