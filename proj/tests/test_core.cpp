#include "admwex/poly.hpp"
#include "admwex/rational_fn.hpp"
#include "admwex/roots.hpp"
#include "admwex/setup.hpp"

#include <random>

#include "doctest.h"

using namespace admwex;

namespace {
Rational rq(long n, long d = 1) { return Rational(n, d); }
}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a = Rational::parse("-836/1203");
  CHECK(a.num() == -836);
  CHECK(a.den() == 1203);
  CHECK(Rational::parse("0.25") == rq(1, 4));
  CHECK(Rational(2, 4) == rq(1, 2));
  CHECK((rq(1, 3) + rq(1, 6)) == rq(1, 2));
  CHECK(pow_int(rq(2, 3), -2) == rq(9, 4));
  Rational s;
  CHECK(sqrt_exact(rq(9, 25), s));
  CHECK(s == rq(3, 5));
  CHECK(!sqrt_exact(rq(2), s));
  CHECK_THROWS_AS(rq(1) / rq(0), std::domain_error);
}

TEST_CASE("polynomial canonical form and algebra") {
  Poly<Rational> p({rq(1), rq(0), rq(3), rq(0)});
  CHECK(p.degree() == 2);
  CHECK(Poly<Rational>({rq(0)}).degree() == -1);
  CHECK(Poly<Rational>::zero().is_zero());

  Poly<Rational> q = Poly<Rational>::linear(rq(1), rq(1, 2));
  Poly<Rational> r = Poly<Rational>::linear(rq(1), rq(1, 3));
  Poly<Rational> prod = q * r;
  CHECK(prod.coeff(0) == rq(1));
  CHECK(prod.coeff(1) == rq(5, 6));
  CHECK(prod.coeff(2) == rq(1, 6));

  // derivative/antiderivative round trip
  CHECK(prod.antiderivative().derivative() == prod);

  // Taylor shift: p(z+t) evaluated at z equals p(z+t)
  Poly<Rational> sh = prod.shifted(rq(5));
  CHECK(sh.eval(rq(-3)) == prod.eval(rq(2)));

  // exact division
  CHECK(prod.exact_div(q) == r);
  CHECK_THROWS(prod.exact_div(Poly<Rational>::linear(rq(1), rq(7))));

  // jet evaluation
  Rational f, f1, f2;
  prod.eval_jet(rq(1, 7), f, f1, f2);
  CHECK(f == prod.eval(rq(1, 7)));
  CHECK(f1 == prod.derivative().eval(rq(1, 7)));
  CHECK(f2 == prod.derivative().derivative().eval(rq(1, 7)));
}

TEST_CASE("gcd and rational functions reduce") {
  Poly<Rational> a = Poly<Rational>::linear(rq(1), rq(1));
  Poly<Rational> b = Poly<Rational>::linear(rq(-1), rq(1));
  RationalFn<Rational> f(a * a * b, a * b * b);
  CHECK(f.num() == a);
  CHECK(f.den() == b);
  CHECK(f.eval(rq(3)) == rq(2));
  CHECK_THROWS_AS(f.eval(rq(1)), std::domain_error);
}

TEST_CASE("momentum polynomial matches worked products") {
  using S = AdmissibleSetup<Rational>;
  // single block
  S s1({{rq(2, 5), 1, rq(1)}});
  CHECK(momentum_polynomial(s1) == Poly<Rational>::linear(rq(1), rq(2, 5)));
  // two simple blocks: (1+z/2)(1+z/3)
  S s2({{rq(1, 2), 1, rq(0)}, {rq(1, 3), 1, rq(0)}});
  Poly<Rational> pc = momentum_polynomial(s2);
  CHECK(pc.coeff(0) == rq(1));
  CHECK(pc.coeff(1) == rq(5, 6));
  CHECK(pc.coeff(2) == rq(1, 6));
  // d0 > 0 appends the (1+z) factor
  S s3({{rq(1, 2), 1, rq(1)}}, 1, 0);
  CHECK(momentum_polynomial(s3) ==
        Poly<Rational>::linear(rq(1), rq(1)) * Poly<Rational>::linear(rq(1), rq(1, 2)));
  CHECK(s3.fibre_dim_m() == 3);

  // validation
  CHECK_THROWS_AS(S({{rq(0), 1, rq(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(S({{rq(3, 2), 1, rq(1)}}), std::invalid_argument);
  CHECK_THROWS_AS(S({}, 0, 0), std::invalid_argument);
}

TEST_CASE("curvature density worked examples") {
  using S = AdmissibleSetup<Rational>;
  S s1({{rq(2, 5), 1, rq(7)}});
  CHECK(curvature_density(s1) == Poly<Rational>::constant(rq(14, 5)));

  S s2({{rq(1, 2), 1, rq(3)}, {rq(1, 3), 1, rq(-4)}});
  // (s1/2)(1+z/3) + (s2/3)(1+z/2)
  Poly<Rational> expect = rq(3, 2) * Poly<Rational>::linear(rq(1), rq(1, 3)) +
                          rq(-4, 3) * Poly<Rational>::linear(rq(1), rq(1, 2));
  CHECK(curvature_density(s2) == expect);

  S s0({{rq(1, 2), 1, rq(0)}, {rq(1, 3), 2, rq(0)}});
  CHECK(curvature_density(s0).is_zero());
}

TEST_CASE("momentum polynomial positive on the open interval") {
  std::mt19937_64 rng(12345);
  std::uniform_int_distribution<int> num(-9, 9);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<BaseBlock<Rational>> blocks;
    int nb = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nb; ++i) {
      int n = 0;
      while (n == 0) n = num(rng);
      blocks.push_back({rq(n, 10), 1 + static_cast<int>(rng() % 2), rq(num(rng))});
    }
    AdmissibleSetup<Rational> s(blocks, static_cast<int>(rng() % 2), static_cast<int>(rng() % 2));
    Poly<Rational> pc = momentum_polynomial(s);
    CHECK(pc.degree() == s.fibre_dim_m() - 1);
    for (int j = -9; j <= 9; ++j) CHECK(pc.eval(rq(j, 10)).sign() > 0);
    // endpoint zeros appear exactly when d0/dinf are positive
    CHECK((pc.eval(rq(-1)).is_zero()) == (s.d0() > 0));
    CHECK((pc.eval(rq(1)).is_zero()) == (s.dinf() > 0));
  }
}

TEST_CASE("exact and float polynomial evaluation agree") {
  std::mt19937_64 rng(777);
  std::uniform_int_distribution<long> num(-1000, 1000);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Rational> c;
    std::vector<double> cd;
    int deg = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i <= deg; ++i) {
      long n = num(rng);
      long d = 1 + static_cast<long>(rng() % 20);
      c.push_back(rq(n, d));
      cd.push_back(static_cast<double>(n) / static_cast<double>(d));
    }
    Poly<Rational> pq(c);
    Poly<double> pd(cd);
    long zn = num(rng) % 100;
    Rational z = rq(zn, 100);
    double expect = pd.eval(zn / 100.0);
    double got = pq.eval(z).to_double();
    CHECK(std::fabs(got - expect) <= 1e-12 * (1.0 + std::fabs(expect)));
  }
}

TEST_CASE("sturm isolation finds all roots with multiplicity") {
  // (z - 1/2)^2 (z + 1/3) (z - 2)
  Poly<Rational> p = Poly<Rational>::linear(rq(-1, 2), rq(1)).pow(2) *
                     Poly<Rational>::linear(rq(1, 3), rq(1)) * Poly<Rational>::linear(rq(-2), rq(1));
  auto roots = isolate_roots(p, rq(-1), rq(3));
  REQUIRE(roots.size() == 3);
  auto r0 = refine_root(roots[0], rq(1, 1 << 20));
  auto r1 = refine_root(roots[1], rq(1, 1 << 20));
  auto r2 = refine_root(roots[2], rq(1, 1 << 20));
  CHECK(r0.multiplicity == 1);
  CHECK(r1.multiplicity == 2);
  CHECK(r2.multiplicity == 1);
  CHECK(abs(r0.mid() + rq(1, 3)) < rq(1, 1 << 18));
  CHECK(abs(r1.mid() - rq(1, 2)) < rq(1, 1 << 18));
  CHECK(abs(r2.mid() - rq(2)) < rq(1, 1 << 18));
  auto rat = rational_root_in(r1, 10);
  REQUIRE(rat.has_value());
  CHECK(*rat == rq(1, 2));
}

TEST_CASE("root isolation separates clustered roots") {
  // roots at 1/2 and 1/2 + 1/2^16 from different factors
  Rational eps(1, 1 << 16);
  Poly<Rational> p = Poly<Rational>::linear(rq(-1, 2), rq(1)) *
                     Poly<Rational>::linear(-(rq(1, 2) + eps), rq(1)).pow(2);
  auto roots = isolate_roots(p, rq(0), rq(1));
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].hi <= roots[1].lo);
  CHECK(roots[0].multiplicity == 1);
  CHECK(roots[1].multiplicity == 2);
}
