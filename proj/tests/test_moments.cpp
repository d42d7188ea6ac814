#include "admwex/moments.hpp"

#include <cmath>
#include <random>

#include "doctest.h"

using namespace admwex;

namespace {
Rational rq(long n, long d = 1) { return Rational(n, d); }

AdmissibleSetup<Rational> negative_scal_setup(const Rational& s1, const Rational& s2) {
  return AdmissibleSetup<Rational>({{rq(1, 2), 1, s1}, {rq(1, 3), 1, s2}});
}

AdmissibleSetup<double> to_float(const AdmissibleSetup<Rational>& s) {
  std::vector<BaseBlock<double>> blocks;
  for (const auto& b : s.base_blocks())
    blocks.push_back({b.x.to_double(), b.d, b.s.to_double()});
  return AdmissibleSetup<double>(blocks, s.d0(), s.dinf());
}
}  // namespace

TEST_CASE("alpha moments: symmetric-interval basics") {
  AdmissibleSetup<Rational> s({{rq(2, 5), 1, rq(1)}});
  WeightParams<Rational> w(rq(3), rq(4));
  CHECK(alpha(s, w, 0, rq(0)) == rq(2));
  CHECK(alpha(s, w, 1, rq(0)) == rq(2) * rq(2, 5) / rq(3));
}

TEST_CASE("alpha moment with negative exponent: frozen closed form") {
  // p_c = 1 + t/2, a = 5, r = 0, q = -3. Antiderivative:
  // (1+t/2) = (t+5)/2 - 3/2, so the integral is 1/24 - 5/192 = 1/64.
  AdmissibleSetup<Rational> s({{rq(1, 2), 1, rq(0)}});
  WeightParams<Rational> w(rq(5), rq(4));
  CHECK(alpha(s, w, 0, rq(-3)) == rq(1, 64));

  AdmissibleSetup<double> sf = to_float(s);
  WeightParams<double> wf(5.0, 4.0);
  double quad = alpha(sf, wf, 0, -3.0);
  CHECK(std::fabs(quad - 1.0 / 64.0) < 1e-12);
}

TEST_CASE("log obstruction is reported, never approximated") {
  AdmissibleSetup<Rational> s({{rq(1, 2), 1, rq(0)}});
  WeightParams<Rational> w(rq(5), rq(4));
  // t^0 p_c has a (t+a)^1 component, so q = -2 puts that term at exponent -1.
  CHECK_THROWS_AS(alpha(s, w, 0, rq(-2)), ExactLogObstruction);
}

TEST_CASE("beta reduces to the boundary term when all s_a vanish") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    long xn = 1 + static_cast<long>(rng() % 9);
    Rational x = rq(xn, 10);
    AdmissibleSetup<Rational> s({{x, 1, rq(0)}});
    Rational a = rq(2 + static_cast<long>(rng() % 8));
    WeightParams<Rational> w(a, rq(4));
    long q = -(1 + 4);
    Rational expect0 = pow_int(a - rq(1), q) * (rq(1) - x) + pow_int(rq(1) + a, q) * (rq(1) + x);
    Rational expect1 = -pow_int(a - rq(1), q) * (rq(1) - x) + pow_int(rq(1) + a, q) * (rq(1) + x);
    CHECK(beta(s, w, 0, rq(q)) == expect0);
    CHECK(beta(s, w, 1, rq(q)) == expect1);
  }
}

TEST_CASE("worked ruled-bundle example: extremal constants") {
  // x1 = 1/2, x2 = 1/3, a = 5, p = 6.
  WeightParams<Rational> w(rq(5), rq(6));

  SUBCASE("generic s: closed forms") {
    auto check_at = [&](const Rational& s1, const Rational& s2) {
      auto ab = solve_extremal_constants(negative_scal_setup(s1, s2), w);
      Rational a1_expect = rq(20) * (rq(9840) - rq(4502) * s1 + rq(1203) * s2) / rq(24073);
      Rational a2_expect = rq(20) * (rq(7836) + rq(4442) * s1 + rq(2883) * s2) / rq(3439);
      CHECK(ab.A1 == a1_expect);
      CHECK(ab.A2 == a2_expect);
    };
    check_at(rq(1), rq(0));
    check_at(rq(-3), rq(7, 2));
    check_at(rq(0), rq(0));
  }

  SUBCASE("tuned s2 kills A1 and pins A2") {
    Rational s1 = rq(2);
    Rational s2 = rq(2) * (rq(2251) * s1 - rq(4920)) / rq(1203);
    CHECK(s2 == rq(-836, 1203));
    auto ab = solve_extremal_constants(negative_scal_setup(s1, s2), w);
    CHECK(ab.A1 == rq(0));
    CHECK(ab.A2 == rq(34320, 401));
  }
}

TEST_CASE("ruled surface duality: A1 vanishes at x = 2a/(1+a^2)") {
  // s = 1 normalization, p = 4, p_c = 1 + x z.
  for (long av = 2; av <= 4; ++av) {
    Rational a(av);
    Rational x = rq(2) * a / (rq(1) + a * a);
    AdmissibleSetup<Rational> s({{x, 1, rq(1)}});
    WeightParams<Rational> w(a, rq(4));
    auto ab = solve_extremal_constants(s, w);
    CHECK(ab.A1 == rq(0));
  }
}

TEST_CASE("Cauchy-Schwarz moment inequality holds strictly") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> xi(-9, 9);
  for (int trial = 0; trial < 30; ++trial) {
    long xn = 0;
    while (xn == 0) xn = xi(rng);
    AdmissibleSetup<Rational> s({{rq(xn, 10), 1 + static_cast<int>(rng() % 2), rq(xi(rng))}},
                                static_cast<int>(rng() % 2), static_cast<int>(rng() % 2));
    WeightParams<Rational> w(rq(11 + static_cast<long>(rng() % 80), 10), rq(s.fibre_dim_m() + 2));
    Rational q = -(rq(1) + w.p);
    Rational a0 = alpha(s, w, 0, q), a1 = alpha(s, w, 1, q), a2 = alpha(s, w, 2, q);
    CHECK(a1 * a1 < a0 * a2);
    CHECK_NOTHROW(solve_extremal_constants(s, w));
  }
}

TEST_CASE("exact and float moment paths agree") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long> xi(-9, 9);
  for (int trial = 0; trial < 25; ++trial) {
    long xn = 0;
    while (xn == 0) xn = xi(rng);
    long sn = xi(rng);
    AdmissibleSetup<Rational> s({{rq(xn, 10), 1, rq(sn)}});
    AdmissibleSetup<double> sf = to_float(s);
    long an = 12 + static_cast<long>(rng() % 60);
    long pv = 4 + static_cast<long>(rng() % 4);
    WeightParams<Rational> w(rq(an, 10), rq(pv));
    WeightParams<double> wf(an / 10.0, static_cast<double>(pv));
    auto ab = solve_extremal_constants(s, w);
    auto abf = solve_extremal_constants(sf, wf);
    double a1 = ab.A1.to_double(), a2 = ab.A2.to_double();
    CHECK(std::fabs(abf.A1 - a1) <= 1e-10 * std::max(1.0, std::fabs(a1)));
    CHECK(std::fabs(abf.A2 - a2) <= 1e-10 * std::max(1.0, std::fabs(a2)));
  }
}

TEST_CASE("symbolic moments match pointwise evaluation") {
  auto setup = negative_scal_setup(rq(2), rq(-1, 2));
  auto sym = solve_extremal_constants_fn(setup, 6);
  for (long av : {3L, 5L, 9L}) {
    WeightParams<Rational> w(rq(av), rq(6));
    auto ab = solve_extremal_constants(setup, w);
    CHECK(sym.A1.eval(rq(av)) == ab.A1);
    CHECK(sym.A2.eval(rq(av)) == ab.A2);
  }
}

TEST_CASE("float path accepts non-integer p") {
  AdmissibleSetup<double> s({{0.4, 1, 1.5}});
  WeightParams<double> w(2.5, 3.5);
  auto ab = solve_extremal_constants(s, w);
  CHECK(std::isfinite(ab.A1));
  CHECK(std::isfinite(ab.A2));
  // spot check alpha against a slow trapezoid evaluation
  double ref = 0.0;
  int n = 200000;
  for (int i = 0; i < n; ++i) {
    double t0 = -1.0 + 2.0 * i / n, t1 = -1.0 + 2.0 * (i + 1) / n;
    auto f = [&](double t) { return std::pow(t + 2.5, -4.5) * (1 + 0.4 * t); };
    ref += 0.5 * (f(t0) + f(t1)) * (t1 - t0);
  }
  CHECK(std::fabs(alpha(s, w, 0, -(1 + 3.5)) - ref) < 1e-8);
}
