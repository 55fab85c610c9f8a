#include "doctest.h"

#include <cmath>

#include "padiclab/constructors.hpp"
#include "padiclab/exponents.hpp"

using namespace padiclab;

namespace {
BestApproxChain synthetic(Norm n, unsigned long p, std::vector<ApproxPair> e) {
  BestApproxChain c;
  c.norm = n;
  c.p = p;
  c.entries = std::move(e);
  return c;
}
}  // namespace

TEST_CASE("pointwise tau") {
  auto c = synthetic(Norm::Sup, 2, {{1, 1, Valuation::exact(1)}, {1, 3, Valuation::exact(4)}});
  auto pw = pointwise(c);
  CHECK_FALSE(pw[0].tau.has_value());
  REQUIRE(pw[1].tau.has_value());
  CHECK(*pw[1].tau == doctest::Approx(2.5237190142858297).epsilon(1e-12));
}

TEST_CASE("uniform terms") {
  auto s = synthetic(Norm::Sup, 2, {{1, 1, Valuation::exact(1)}, {1, 2, Valuation::exact(3)}, {3, 4, Valuation::exact(5)}});
  auto pw = pointwise(s);
  REQUIRE(pw[1].uniform_term.has_value());
  CHECK(*pw[1].uniform_term == doctest::Approx(1.0));
  CHECK_FALSE(pw[2].uniform_term.has_value());

  // Q = 2 with v ln p = ln 2^3, next Q = 4
  auto m = synthetic(Norm::Mult, 2, {{1, 1, Valuation::exact(1)}, {1, 4, Valuation::exact(3)}, {1, 16, Valuation::exact(5)}});
  auto pm = pointwise(m);
  REQUIRE(pm[1].uniform_term.has_value());
  CHECK(1 + *pm[1].uniform_term == doctest::Approx(2.0));
  CHECK(*pm[1].tau == doctest::Approx(3.0));
}

TEST_CASE("burn-in index") {
  CHECK(burn_in_index(18, 0.2) == 4);
  CHECK(burn_in_index(10, 0.2) == 2);
  CHECK(burn_in_index(5, 0.2) == 2);
  CHECK(burn_in_index(100, 0.2) == 20);
  CHECK_THROWS_AS(burn_in_index(10, 1.5), InputError);
}

TEST_CASE("constant tau chain") {
  std::vector<ApproxPair> e;
  for (long k = 0; k < 30; ++k) e.push_back({1, ipow(2, static_cast<unsigned long>(100 + k)), Valuation::exact(2 * (100 + k))});
  auto r = estimate_classical(synthetic(Norm::Sup, 2, e));
  CHECK(*r.mu == doctest::Approx(2.0));
  CHECK(*r.hat_mu == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("short and censored chains") {
  auto one = synthetic(Norm::Sup, 2, {{1, 1, Valuation::exact(1)}});
  CHECK_THROWS_AS(pointwise(one), InputError);
  auto xi = from_rational(2, 5, 7, 40);
  auto c = chain(xi, Norm::Sup, 40);
  REQUIRE(c.censored.has_value());
  auto pw = pointwise(c);
  CHECK(pw.size() == c.entries.size());
  CHECK(estimate_classical(c).precision_limited);
}

TEST_CASE("lacunary estimates") {
  auto xi = build_lacunary({2, parse_growth("pow:3", 9)});
  auto cs = chain(xi, Norm::Sup, static_cast<long>(xi.precision()));
  auto cm = chain(xi, Norm::Mult, static_cast<long>(xi.precision()));
  auto r = make_report(&cs, &cm);
  CHECK(*r.mu == doctest::Approx(3.0).epsilon(0.05));
  CHECK(*r.mu_times == doctest::Approx(6.0).epsilon(0.05));
  CHECK(*r.hat_mu == doctest::Approx(2.0).epsilon(0.02));
  CHECK(*r.hat_mu_times >= 8.0 / 3 - 0.1);
  CHECK(*r.hat_mu_times <= 3.5 + 0.1);
  CHECK(*r.mu_times <= 2 * *r.mu + 1e-9);
  CHECK(*r.mu <= *r.mu_times + 1e-9);
  CHECK(*r.hat_mu <= *r.mu);
  CHECK(*r.hat_mu_times <= *r.mu_times);
  CHECK_THROWS_AS(make_report(&cm, &cs), InputError);
}

TEST_CASE("random estimates") {
  auto xi = build_digit_rule(3, "random", 2000, 11);
  auto c = chain(xi, Norm::Sup, 2000);
  auto r = estimate_classical(c);
  CHECK(*r.mu == doctest::Approx(2.0).epsilon(0.15));
  CHECK(*r.hat_mu == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("pointwise values are stable under chain extension") {
  auto xi = build_digit_rule(2, "random", 400, 5);
  auto full = chain(xi, Norm::Sup, 400);
  auto part = chain(xi, Norm::Sup, 200);
  auto a = pointwise(part), b = pointwise(full);
  REQUIRE(a.size() <= b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(part.entries[k].x == full.entries[k].x);
    if (a[k].tau) CHECK(*a[k].tau == *b[k].tau);
    if (a[k].uniform_term) CHECK(*a[k].uniform_term == *b[k].uniform_term);
  }
}

TEST_CASE("uniform cross-check") {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    auto xi = build_digit_rule(2, "random", 30, 500 + seed);
    for (Norm n : {Norm::Sup, Norm::Mult}) {
      auto c = chain(xi, n, 30);
      auto cc = cross_check_uniform(xi, c, 5, n == Norm::Sup ? 5000 : 50000);
      CHECK(cc.agree);
      CHECK(cc.max_discrepancy <= 1e-9);
      CHECK(cc.samples.size() >= 3);
    }
  }
  auto q = from_rational(2, 5, 7, 30);
  auto c = chain(q, Norm::Sup, 30);
  auto cc = cross_check_uniform(q, c, 5, 5000);
  REQUIRE_FALSE(cc.samples.empty());
  CHECK(cc.samples.back().censored);
  CHECK(cc.agree);
}
