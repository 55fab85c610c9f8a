#include "doctest.h"

#include <cmath>

#include "padiclab/constructors.hpp"
#include "padiclab/verify.hpp"

using namespace padiclab;

namespace {
ExponentReport rep(double mu, double mu_times, double hat_mu, double hat_mu_times) {
  ExponentReport r;
  r.mu = mu;
  r.mu_times = mu_times;
  r.hat_mu = hat_mu;
  r.hat_mu_times = hat_mu_times;
  return r;
}

const CheckResult& named(const std::vector<CheckResult>& v, const std::string& n) {
  for (const auto& c : v)
    if (c.name == n) return c;
  throw std::runtime_error("missing check " + n);
}
}  // namespace

TEST_CASE("chain bounds") {
  auto a = check_chain_bounds(rep(3, 6, 2, 2.7));
  CHECK(all_passed(a));
  CHECK(named(a, "mu_times_at_most_2mu").margin == doctest::Approx(0));
  CHECK(all_passed(check_chain_bounds(rep(2, 2, 2, 2))));
  auto bad = check_chain_bounds(rep(2, 5, 2, 2));
  CHECK_FALSE(named(bad, "mu_times_at_most_2mu").passed);
  CHECK_FALSE(all_passed(bad));
  ExponentReport partial;
  partial.mu = 2.5;
  CHECK(all_passed(check_chain_bounds(partial)));
}

TEST_CASE("endlich") {
  auto e = check_endlich(rep(4, 4, 2, 3.5));
  CHECK(named(e, "endlich_andere").inputs["bound"].get<double>() == doctest::Approx(4));
  auto j = check_endlich(rep(3, 3, 2, 3));
  CHECK(named(j, "endlich_jnik").inputs["bound"].get<double>() == doctest::Approx(3));
  CHECK(named(j, "endlich_jnik").passed);
  CHECK_FALSE(named(check_endlich(rep(3, 2.9, 2, 3)), "endlich_jnik").passed);
  auto b = check_endlich(rep(4, 8, 2, 3.7));
  CHECK_FALSE(named(b, "endlich_bndere").passed);
  CHECK(named(b, "endlich_bndere").inputs["bound"].get<double>() == doctest::Approx(3.6180339887));
  auto s = check_endlich(rep(2, 2, 2, 2));
  CHECK(named(s, "endlich_andere").inputs.contains("skipped"));
}

TEST_CASE("lacunary sandwich") {
  auto a = check_lacunary_sandwich(rep(3, 6, 2, 2.8), 3, 3);
  CHECK(a.inputs["lower"].get<double>() == doctest::Approx(8.0 / 3));
  CHECK(a.inputs["upper"].get<double>() == doctest::Approx(3.5));
  CHECK(a.passed);
  auto f = check_lacunary_sandwich(rep(3, 6, 2, 3), INFINITY, INFINITY);
  CHECK(f.inputs["lower"].get<double>() == doctest::Approx(3));
  CHECK(f.inputs["upper"].get<double>() == doctest::Approx(3));
  auto t = check_lacunary_sandwich(rep(2, 4, 2, 3), 2, 2);
  CHECK(t.inputs["lower"].get<double>() == doctest::Approx(2.5));
  CHECK(t.inputs["upper"].get<double>() == doctest::Approx(4));
  CHECK_FALSE(check_lacunary_sandwich(rep(2, 4, 2, 2.2), 2, 2).passed);
  CHECK_THROWS_AS(check_lacunary_sandwich(rep(2, 4, 2, 3), 2, 1), InputError);
}

TEST_CASE("padicle") {
  auto xi = build_digit_rule(3, "random", 300, 4);
  for (Norm n : {Norm::Sup, Norm::Mult}) CHECK(check_padicle(chain(xi, n, 300).entries, 3).passed);
  std::vector<ApproxPair> dep{{1, 1, Valuation::exact(5)}, {2, 2, Valuation::exact(6)}};
  auto d = check_padicle(dep, 2);
  CHECK(d.passed);
  CHECK(d.inputs["dependent_skipped"].get<int>() == 1);
  std::vector<ApproxPair> bad{{1, 1, Valuation::exact(5)}, {1, 2, Valuation::exact(5)}};
  CHECK_FALSE(check_padicle(bad, 2).passed);
  // equality p^v = 2 X_1 X_2 is allowed
  std::vector<ApproxPair> edge{{1, 1, Valuation::exact(2)}, {1, 2, Valuation::exact(2)}};
  CHECK(check_padicle(edge, 2).passed);
}

TEST_CASE("korollar") {
  BestApproxChain c;
  c.norm = Norm::Sup;
  c.p = 2;
  // H_k = 7, v_k = 4: window [8/7, 48/7]
  c.entries = {{7, 1, Valuation::exact(4)}, {3, 8, Valuation::exact(9)}};
  CHECK_FALSE(check_korollar(c).passed);
  // v_k = 6: window [32/7, 192/7]
  c.entries = {{7, 1, Valuation::exact(6)}, {3, 10, Valuation::exact(9)}};
  CHECK(check_korollar(c).passed);
  c.entries = {{7, 1, Valuation::exact(6)}, {3, 30, Valuation::exact(12)}};
  CHECK_FALSE(check_korollar(c).passed);
  auto lac = build_lacunary({2, parse_growth("pow:3", 8)});
  CHECK(check_korollar(chain(lac, Norm::Sup, static_cast<long>(lac.precision()))).passed);
  BestApproxChain shortc = c;
  shortc.entries.resize(1);
  CHECK_THROWS_AS(check_korollar(shortc), InputError);
}

TEST_CASE("neu and hilfl on a lacunary chain") {
  auto xi = build_lacunary({2, parse_growth("pow:3", 8)});
  auto cs = chain(xi, Norm::Sup, static_cast<long>(xi.precision()));
  auto cm = chain(xi, Norm::Mult, static_cast<long>(xi.precision()));
  auto r = make_report(&cs, &cm);
  auto n = diagnose_neu(cm, r);
  CHECK(n.diagnostic);
  CHECK(n.passed);
  // truncations (Q_k, 1) sit on the x side
  CHECK(n.inputs["x_side_pairs"].get<int>() > 0);
  CHECK(check_hilfl(cm, r).passed);
  auto fake = r;
  fake.hat_mu_times = 3.5;
  CHECK_FALSE(diagnose_neu(cm, fake).passed);
  CHECK(all_passed({diagnose_neu(cm, fake)}));
}
