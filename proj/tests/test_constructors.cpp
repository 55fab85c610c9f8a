#include "doctest.h"

#include <algorithm>

#include "padiclab/constructors.hpp"

using namespace padiclab;

namespace {
std::vector<std::size_t> ones(const PAdicNumber& xi) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < xi.precision(); ++i)
    if (xi.digits()[i] == 1) out.push_back(i);
  return out;
}
}  // namespace

TEST_CASE("lacunary") {
  auto xi = build_lacunary({2, {0, 1, 2, 4, 8}});
  CHECK(xi.value() == 279);
  CHECK(xi.precision() == 9);
  auto a = parse_growth("pow:3", 9);
  CHECK(a == std::vector<std::uint64_t>{0, 3, 9, 27, 81, 243, 729, 2187, 6561});
  auto big = build_lacunary({2, a});
  CHECK(big.precision() == 6562);
  CHECK(ones(big) == std::vector<std::size_t>(a.begin(), a.end()));
  CHECK(build_lacunary({3, {0, 1}}).value() == 4);
  CHECK(parse_growth("list:0,2,5", 0) == std::vector<std::uint64_t>{0, 2, 5});
  CHECK(parse_growth("pow:2.5", 4) == std::vector<std::uint64_t>{0, 3, 6, 16});
}

TEST_CASE("lacunary errors and warnings") {
  CHECK_THROWS_AS(build_lacunary({2, {0}}), InputError);
  CHECK_THROWS_AS(build_lacunary({2, {1, 2}}), InputError);
  CHECK_THROWS_AS(build_lacunary({2, {0, 3, 3}}), InputError);
  CHECK_THROWS_AS(build_lacunary({2, {0, 5000000}}), BudgetError);
  CHECK_THROWS_AS(parse_growth("list:0,2", 3), InputError);
  CHECK_THROWS_AS(parse_growth("exp:2", 3), InputError);
  CHECK(lacunary_warnings({2, {0, 1, 2, 3}}).size() == 1);
  CHECK(lacunary_warnings({2, {0, 1, 2, 4}}).empty());
}

TEST_CASE("factorial") {
  auto xi = build_factorial(2, 4);
  CHECK(ones(xi) == std::vector<std::size_t>{1, 2, 6, 24});
  CHECK(xi.precision() == 25);
  CHECK(build_factorial(2, 8).precision() == 40321);
  CHECK(ones(build_factorial(5, 3)) == std::vector<std::size_t>{1, 2, 6});
  CHECK_THROWS_AS(build_factorial(2, 1), InputError);
  CHECK_THROWS_AS(build_factorial(2, 10), BudgetError);
}

TEST_CASE("digit rules") {
  CHECK(ones(build_digit_rule(2, "thue-morse", 11)) == std::vector<std::size_t>{0, 3, 5, 6, 9, 10});
  CHECK(build_digit_rule(2, "thue-morse", 1).digits() == std::vector<std::uint32_t>{1});
  auto a = build_digit_rule(3, "random", 5, 1), b = build_digit_rule(3, "random", 5, 1);
  CHECK(a.digits() == b.digits());
  CHECK(build_digit_rule(3, "random", 64, 2).digits() != build_digit_rule(3, "random", 64, 1).digits());
  CHECK_THROWS_AS(build_digit_rule(2, "fibonacci", 5), InputError);
}

TEST_CASE("rationals") {
  auto r = parse_rational("5/2");
  CHECK(r.num == 5);
  CHECK(r.den == 2);
  r = parse_rational("2.5");
  CHECK(r.num == 5);
  CHECK(r.den == 2);
  r = parse_rational("6");
  CHECK(r.den == 1);
  CHECK(to_double(parse_rational("-0.25")) == doctest::Approx(-0.25));
  r = parse_rational("010/3");
  CHECK(r.num == 10);
  r = parse_rational("2.05");
  CHECK(r.num == 41);
  CHECK(r.den == 20);
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("schneider_step") {
  SchneiderState s(3);
  s = schneider_step(s, 2);
  CHECK(s.P(1) == 9);
  CHECK(s.Q(1) == 1);
  CHECK(s.L(0) == 2);
  s = schneider_step(s, 1);
  CHECK(s.P(2) == 9);
  CHECK(s.Q(2) == 4);
  CHECK(s.L(1) == s.L(0) + 1);
  CHECK_THROWS_AS(schneider_step(s, 0), InputError);
}

TEST_CASE("schneider exponent driven") {
  std::vector<Rational> mu(3, Rational{5, 2});
  auto res = schneider_exponent_driven(2, mu, 3);
  const auto& s = res.state;
  CHECK(s.last() == 3);
  for (long n = 1; n <= s.last(); ++n) {
    // p^g <= H_n^{5/2} L_{n-1} < p^{g+1}, in integers: p^{2(g + v(L_{n-1}))} <= H^5 < p^{2(g + 1 + v(L_{n-1}))}
    long g = s.g_at(n + 1), l = s.L(n - 1);
    mpz_class H5;
    mpz_pow_ui(H5.get_mpz_t(), s.H(n).get_mpz_t(), 5);
    CHECK(ipow(2, 2 * (g + l)) <= H5);
    CHECK(H5 < ipow(2, 2 * (g + 1 + l)));
    CHECK(gcd(s.P(n), s.Q(n)) == 1);
    // |p_n q_{n+1} - p_{n+1} q_n|_p matches the ledger
    if (n < s.last()) CHECK(vp(s.P(n) * s.Q(n + 1) - s.P(n + 1) * s.Q(n), 2) == s.L(n));
    if (n < s.last()) {
      mpz_class b = ipow(2, static_cast<unsigned long>(s.g_at(n + 1))) * s.H(n - 1);
      CHECK(s.H(n + 1) <= 2 * (s.H(n) > b ? s.H(n) : b));
    }
  }
  for (const auto& c : schneider_sandwich(s)) {
    CHECK(c.lower);
    CHECK(c.upper);
  }
  CHECK(res.xi.precision() == static_cast<std::size_t>(s.L(s.last())));
  CHECK(linear_form_valuation(res.xi, s.P(s.last()), s.Q(s.last())).value >= s.L(s.last()));

  auto one = schneider_exponent_driven(3, {Rational{5, 2}}, 1);
  CHECK(one.state.last() == 1);
  CHECK(one.state.P(1) == 3);

  CHECK_THROWS_AS(schneider_exponent_driven(2, {Rational{21, 10}}, 1), InputError);
}

TEST_CASE("schneider xi materialization") {
  std::vector<Rational> mu(8, Rational{5, 2});
  auto res = schneider_exponent_driven(3, mu, 8);
  auto xi = schneider_xi(res.state, 50);
  CHECK(xi.precision() == 50);
  CHECK(residue(res.xi, 50) == xi.value());
  CHECK_THROWS_AS(schneider_xi(res.state, 100000000), InputError);
}

TEST_CASE("mu sequences") {
  auto c = parse_mu_seq("const:5/2", 4);
  CHECK(c.size() == 4);
  CHECK(c[3].num == 5);
  auto l = parse_mu_seq("list:3,5/2*3,4", 6);
  CHECK(l.size() == 6);
  CHECK(l[0].num == 3);
  CHECK(l[3].num == 5);
  CHECK(l[4].num == 4);
  CHECK(l[5].num == 4);
  auto b = parse_mu_seq("blocks:5/2,9", 8);
  // 1 base, spike, 2 base, spike, 4 base...
  CHECK(b[0].num == 5);
  CHECK(b[1].num == 9);
  CHECK(b[2].num == 5);
  CHECK(b[4].num == 9);
  CHECK(b[5].num == 5);
  CHECK_THROWS_AS(parse_mu_seq("wave:3", 2), InputError);
}

TEST_CASE("surgery positions") {
  SurgerySpec spec;
  spec.C = 5;
  spec.sigma = {10};
  std::vector<long> nu, tau;
  surgery_positions(spec, nu, tau);
  CHECK(nu == std::vector<long>{95});
  CHECK(tau == std::vector<long>{570});
  spec.sigma = {10, 100};
  CHECK_THROWS_AS(surgery_positions(spec, nu, tau), InputError);
  spec.sigma = {10, 600};
  CHECK_NOTHROW(surgery_positions(spec, nu, tau));
  spec.t = {5, 2};
  CHECK_THROWS_AS(surgery_positions(spec, nu, tau), InputError);
}

TEST_CASE("surgery transform") {
  auto zeta = PAdicNumber::from_digits(2, std::vector<std::uint32_t>(8, 1));
  SurgerySpec spec;
  spec.t = {1, 1};
  spec.mu = {12, 5};
  spec.C = 0;
  spec.sigma = {1};
  auto r = surgery_transform(zeta, spec);
  CHECK(r.nu == std::vector<long>{2});
  CHECK(r.tau == std::vector<long>{4});
  CHECK(r.xi.digits() == std::vector<std::uint32_t>{1, 1, 1, 0, 1, 1, 1, 1});
  CHECK(r.u == std::vector<mpz_class>{8});
  CHECK(r.u_partial == std::vector<mpz_class>{0, 8});
  // zeta = xi + u_1
  CHECK(zeta.value() == r.xi.value() + r.u[0]);
  spec.sigma = {3};
  CHECK_THROWS_AS(surgery_transform(zeta, spec), InputError);
}

TEST_CASE("surgery pairs") {
  auto xi = PAdicNumber::from_digits(2, {1, 0, 1, 1});
  std::vector<ApproxPair> x{{7, 3, {}}, {7, 3, {}}};
  auto y = surgery_pairs(xi, x, {0, 8});
  CHECK(y[0].x == 7);
  CHECK(y[0].y == 3);
  CHECK(y[1].x == -17);
  CHECK(y[1].y == 3);
  CHECK_THROWS_AS(surgery_pairs(xi, x, {0}), InputError);
}

TEST_CASE("surgery from a schneider source") {
  std::vector<Rational> mu(12, Rational{5, 2});
  mu[0] = {9, 1};
  auto src = schneider_exponent_driven(2, mu, 12);
  const auto& zeta = src.xi;
  auto s = surgery_source_from_schneider(src.state, {1}, zeta);
  CHECK(s.sigma == std::vector<long>{1});
  CHECK(s.x_pairs[0].x == 2);
  CHECK(s.x_pairs[0].val == Valuation::exact(9));
  SurgerySpec spec;
  spec.C = 10;
  spec.sigma = s.sigma;
  auto r = surgery_transform(zeta, spec);
  for (std::size_t i = 0; i < zeta.precision(); ++i) {
    bool inside = static_cast<long>(i) >= r.nu[0] && static_cast<long>(i) <= r.tau[0];
    if (!inside) CHECK(r.xi.digits()[i] == zeta.digits()[i]);
  }
  CHECK(r.xi.digits()[r.nu[0]] == 1);
  CHECK(r.xi.digits()[r.tau[0]] == 1);
  auto ap = surgery_approximants(r.xi, r, surgery_pairs(r.xi, s.x_pairs, r.u_partial));
  REQUIRE(ap.size() == 2);
  CHECK(ap[0].kind == "N");
  CHECK(ap[0].pair.val.value == r.tau[0]);
  CHECK(ap[1].exponent == doctest::Approx(9.0));
}
