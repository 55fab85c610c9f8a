#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "padiclab/exponents.hpp"

namespace padiclab {

constexpr double kDefaultTolerance = 0.05;

struct CheckResult {
  std::string name;
  bool passed = true;
  // slack, positive when satisfied
  double margin = 0;
  nlohmann::ordered_json inputs = nlohmann::ordered_json::object();
  // diagnostics never affect the exit code
  bool diagnostic = false;
};

// Minkowski chain 2 <= mu <= mu_times <= 2 mu, hat_mu = 2, hat_mu_times <= 4.
std::vector<CheckResult> check_chain_bounds(const ExponentReport& r, double tol = kDefaultTolerance);

// hat_mu_times <= 3 + 2/(mu_times - 2), mu_times >= hat^2 - 3 hat + 3,
// hat_mu_times <= (5 + sqrt 5)/2.
std::vector<CheckResult> check_endlich(const ExponentReport& r, double tol = kDefaultTolerance);

// 3 - 1/c <= hat_mu_times <= 3 + 1/(d - 1); c or d may be infinite.
CheckResult check_lacunary_sandwich(const ExponentReport& r, double c, double d, double tol = kDefaultTolerance);

// No two independent pairs with |y_i xi - x_i|_p < 1/(2 X_1 X_2).
CheckResult check_padicle(const std::vector<ApproxPair>& pairs, unsigned long p);

// 1/2 H_k^{tau_k - 1} <= H_{k+1} <= (p + 1) H_k^{tau_k - 1} on consecutive
// dominant entries of a sup chain.
CheckResult check_korollar(const BestApproxChain& chain_sup);

// Balance of |x|/|y| along a multiplicative chain.
CheckResult diagnose_neu(const BestApproxChain& chain_mult, const ExponentReport& r, double tol = kDefaultTolerance);

// ln Q_{k+1} / ln Q_k <= (mu_times - 1)/(hat_mu_times - 1) past the burn-in.
CheckResult check_hilfl(const BestApproxChain& chain_mult, const ExponentReport& r, double tol = kDefaultTolerance);

bool all_passed(const std::vector<CheckResult>& checks);

}  // namespace padiclab
