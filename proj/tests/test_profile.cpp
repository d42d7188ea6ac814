#include "admwex/profile.hpp"

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
  for (const auto& b : s.base_blocks()) blocks.push_back({b.x.to_double(), b.d, b.s.to_double()});
  return AdmissibleSetup<double>(blocks, s.d0(), s.dinf());
}
}  // namespace

TEST_CASE("Q source term: single block closed form") {
  AdmissibleSetup<Rational> s({{rq(2, 5), 1, rq(3)}});
  WeightParams<Rational> w(rq(2), rq(4));
  ExtremalConstants<Rational> zero{rq(0), rq(0)};
  QEvaluator<Rational> Q(s, w, zero);
  // cd = x s = 6/5, so Q = 2*(6/5)*(z+a)^{1-p}
  for (long zn : {-1L, 0L, 1L}) {
    Rational z = rq(zn, 2);
    Rational expect = rq(12, 5) * pow_int(z + rq(2), -3);
    CHECK(Q.eval(z) == expect);
  }
  // all s_a = 0 and A1 = A2 = 0 gives Q identically zero
  AdmissibleSetup<Rational> s0({{rq(2, 5), 1, rq(0)}});
  QEvaluator<Rational> Q0(s0, w, zero);
  CHECK(Q0.eval(rq(1, 3)) == rq(0));
}

TEST_CASE("Q derivatives agree with finite differences") {
  AdmissibleSetup<double> s({{0.4, 1, 3.0}, {-0.3, 2, -1.0}});
  WeightParams<double> w(1.7, 5.0);
  ExtremalConstants<double> ab{0.3, -2.0};
  QEvaluator<double> Q(s, w, ab);
  double h = 1e-6;
  for (double z : {-0.7, 0.0, 0.5}) {
    double d1 = (Q.eval(z + h) - Q.eval(z - h)) / (2 * h);
    double d2 = (Q.eval(z + h) - 2 * Q.eval(z) + Q.eval(z - h)) / (h * h);
    CHECK(std::fabs(Q.d1(z) - d1) < 1e-5 * (1 + std::fabs(d1)));
    CHECK(std::fabs(Q.d2(z) - d2) < 1e-3 * (1 + std::fabs(d2)));
  }
}

TEST_CASE("ansatz coefficients reproduce the worked ruled-bundle formulas") {
  // x1 = 1/2, x2 = 1/3, a = 5, p = 6 with s1 = 2, s2 = -836/1203
  Rational s1 = rq(2), s2 = rq(-836, 1203);
  auto setup = negative_scal_setup(s1, s2);
  WeightParams<Rational> w(rq(5), rq(6));
  auto prof = build_profile_ansatz(setup, w);

  CHECK(prof.constants().A1 == rq(0));
  CHECK(prof.constants().A2 == rq(34320, 401));

  auto lin = [&](long c, long k1, long k2, long den) {
    return (rq(c) + rq(k1) * s1 + rq(k2) * s2) / rq(den);
  };
  CHECK(prof.basis_coeff(0) == rq(-12) * (rq(314) + rq(2978) * s1 + rq(787) * s2) / rq(24073));
  CHECK(prof.basis_coeff(1) == rq(2) * (rq(-135) + rq(1294) * s1 + rq(279) * s2) / rq(1267));
  CHECK(prof.basis_coeff(2) == lin(7640, -14198, -2697, 15204));
  CHECK(prof.basis_coeff(3) == lin(-98400, 69093, 12043, 433314));
  CHECK(prof.basis_coeff(4) == rq(0));
  CHECK(prof.basis_coeff(5) == lin(415, -83, -13, 30408));
  CHECK(prof.basis_coeff(6) == lin(-21912, 2862, 433, 13866048));
}

TEST_CASE("ansatz c3 matches the symbolic coefficient identity") {
  // c3 = (-x1 x2 A1 + 2 x1 x2 (s1+s2))/6 for the two-surface base
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> si(-5, 5);
  for (int trial = 0; trial < 10; ++trial) {
    Rational s1 = rq(si(rng)), s2 = rq(si(rng), 2);
    auto setup = negative_scal_setup(s1, s2);
    WeightParams<Rational> w(rq(5), rq(6));
    auto prof = build_profile_ansatz(setup, w);
    Rational x1x2 = rq(1, 2) * rq(1, 3);
    Rational expect = (-x1x2 * prof.constants().A1 + rq(2) * x1x2 * (s1 + s2)) / rq(6);
    CHECK(prof.basis_coeff(3) == expect);
  }
}

TEST_CASE("ansatz and moment solver produce identical constants") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> xi(-9, 9);
  for (int trial = 0; trial < 15; ++trial) {
    long xn = 0;
    while (xn == 0) xn = xi(rng);
    AdmissibleSetup<Rational> s({{rq(xn, 10), 1 + static_cast<int>(rng() % 2), rq(xi(rng), 2)}},
                                static_cast<int>(rng() % 2), 0);
    int m = s.fibre_dim_m();
    WeightParams<Rational> w(rq(13 + static_cast<long>(rng() % 60), 10), rq(m + 2 + static_cast<long>(rng() % 3)));
    auto prof = build_profile_ansatz(s, w);
    auto ab = solve_extremal_constants(s, w);
    CHECK(prof.constants().A1 == ab.A1);
    CHECK(prof.constants().A2 == ab.A2);
  }
}

TEST_CASE("ansatz endpoint conditions are exact") {
  auto setup = negative_scal_setup(rq(3), rq(-1));
  WeightParams<Rational> w(rq(3, 2), rq(6));
  auto prof = build_profile_ansatz(setup, w);
  Poly<Rational> pc = momentum_polynomial(setup);
  CHECK(prof.value(rq(1)) == rq(0));
  CHECK(prof.value(rq(-1)) == rq(0));
  CHECK(prof.deriv(rq(1)) == rq(-2) * pc.eval(rq(1)));
  CHECK(prof.deriv(rq(-1)) == rq(2) * pc.eval(rq(-1)));
}

TEST_CASE("negative integer p: exact profile through rational powers") {
  AdmissibleSetup<Rational> s({{rq(1, 2), 1, rq(1)}});
  WeightParams<Rational> w(rq(2), rq(-2));
  auto prof = build_profile_ansatz(s, w);
  Poly<Rational> pc = momentum_polynomial(s);
  CHECK(prof.value(rq(1)) == rq(0));
  CHECK(prof.value(rq(-1)) == rq(0));
  CHECK(prof.deriv(rq(-1)) == rq(2) * pc.eval(rq(-1)));
  // weighted scalar curvature is affine even for p < 0
  auto& ab = prof.constants();
  Rational z = rq(1, 3);
  CHECK(weighted_scalar_curvature(prof, z) == ab.A1 * z + ab.A2);
}

TEST_CASE("weighted scalar curvature of solver output is affine") {
  auto setup = negative_scal_setup(rq(2), rq(-836, 1203));
  WeightParams<Rational> w(rq(5), rq(6));
  auto prof = build_profile_ansatz(setup, w);
  for (long zn = -3; zn <= 3; ++zn) {
    Rational z = rq(zn, 4);
    CHECK(weighted_scalar_curvature(prof, z) == rq(34320, 401));
  }
  // Scal at the endpoints through the exact path
  CHECK(weighted_scalar_curvature(prof, rq(1)) == rq(34320, 401));
}

TEST_CASE("canonical non-extremal profile has non-affine curvature") {
  AdmissibleSetup<Rational> s({{rq(1, 2), 1, rq(1)}});
  Poly<Rational> pc = momentum_polynomial(s);
  Poly<Rational> Fc = Poly<Rational>({rq(1), rq(0), rq(-1)}) * pc;  // (1-z^2) p_c
  Rational v0 = scal_fp_of_poly(s, rq(3), rq(4), Fc, rq(0));
  Rational v1 = scal_fp_of_poly(s, rq(3), rq(4), Fc, rq(1, 2));
  CHECK(v0 != v1);
}

TEST_CASE("integral builder matches the ansatz pointwise") {
  auto setup = negative_scal_setup(rq(2), rq(-1, 3));
  WeightParams<Rational> w(rq(5), rq(6));
  auto exact = build_profile_ansatz(setup, w);
  auto num = build_profile_integral(to_float(setup), WeightParams<double>(5.0, 6.0));
  for (long k = -7; k <= 7; ++k) {
    double fe = exact.value(rq(k, 8)).to_double();
    double fn = num.value(k / 8.0);
    CHECK(std::fabs(fe - fn) < 1e-9 * std::max(1.0, std::fabs(fe)));
  }
}

TEST_CASE("integral builder: endpoint contract and ODE residual") {
  AdmissibleSetup<double> s({{0.8, 1, 1.0}});
  WeightParams<double> w(2.0, 4.0);
  auto prof = build_profile_integral(s, w);
  Poly<double> pc = momentum_polynomial(s);
  double scale = std::max(1.0, prof.endpoint_residual_scale());
  CHECK(std::fabs(prof.value(1.0)) <= 1e-10 * scale);
  CHECK(std::fabs(prof.value(-1.0)) <= 1e-10 * scale);
  CHECK(std::fabs(prof.deriv(1.0) + 2.0 * pc.eval(1.0)) <= 1e-8 * scale);
  CHECK(std::fabs(prof.deriv(-1.0) - 2.0 * pc.eval(-1.0)) <= 1e-8 * scale);

  ExtremalConstants<double> ab = prof.constants();
  QEvaluator<double> Q(s, w, ab);
  double qmax = 0.0;
  for (int i = 0; i <= 256; ++i) qmax = std::max(qmax, std::fabs(Q.eval(-1.0 + 2.0 * i / 256)));
  for (int i = 0; i <= 256; ++i) {
    double z = -1.0 + 2.0 * i / 256;
    CHECK(std::fabs(prof.g_second(z) - Q.eval(z)) <= 1e-8 * qmax);
  }
}

TEST_CASE("non-integer p runs through the numeric pipeline") {
  AdmissibleSetup<double> s({{0.5, 1, 1.0}});
  WeightParams<double> w(1.8, 3.5);
  auto prof = build_profile_integral(s, w);
  auto& ab = prof.constants();
  for (double z : {-0.5, 0.0, 0.7}) {
    double scal = weighted_scalar_curvature(prof, z);
    CHECK(std::fabs(scal - (ab.A1 * z + ab.A2)) < 1e-8 * (1 + std::fabs(ab.A2)));
  }
}

TEST_CASE("positivity verdicts on the worked example") {
  WeightParams<Rational> w(rq(5), rq(6));
  auto s2_for = [&](const Rational& s1) { return rq(2) * (rq(2251) * s1 - rq(4920)) / rq(1203); };

  auto pos = positivity(build_profile_ansatz(negative_scal_setup(rq(2), s2_for(rq(2))), w));
  CHECK(pos.status == PositivityStatus::Positive);

  auto neg = positivity(build_profile_ansatz(negative_scal_setup(rq(-1000000), s2_for(rq(-1000000))), w));
  CHECK(neg.status == PositivityStatus::NegativeSomewhere);
  REQUIRE(neg.witness_z.has_value());
  CHECK(neg.witness_value->sign() < 0);
  // the witness is honest: F really is negative there
  auto prof = build_profile_ansatz(negative_scal_setup(rq(-1000000), s2_for(rq(-1000000))), w);
  CHECK(prof.value(*neg.witness_z).sign() < 0);
}

TEST_CASE("numeric positivity classifies the same example") {
  auto setup = negative_scal_setup(rq(2), rq(-836, 1203));
  auto prof = build_profile_integral(to_float(setup), WeightParams<double>(5.0, 6.0));
  auto v = positivity(prof);
  CHECK(v.status == PositivityStatus::Positive);
}

TEST_CASE("theta: endpoint slopes are -+2") {
  // d0 = 0 case (regular endpoints) and d0 > 0 case (cancelled form)
  auto setup = negative_scal_setup(rq(1), rq(1, 2));
  WeightParams<Rational> w(rq(3), rq(6));
  auto prof = build_profile_ansatz(setup, w);
  CHECK(theta(prof, rq(1)) == rq(0));
  CHECK(theta(prof, rq(-1)) == rq(0));
  CHECK(theta_slope(prof, rq(1)) == rq(-2));
  CHECK(theta_slope(prof, rq(-1)) == rq(2));
  CHECK(theta(prof, rq(0)) == prof.value(rq(0)) / momentum_polynomial(setup).eval(rq(0)));

  AdmissibleSetup<Rational> blow({{rq(1, 3), 1, rq(2)}}, 1, 0);
  WeightParams<Rational> w2(rq(2), rq(3 + 2));
  auto prof2 = build_profile_ansatz(blow, w2);
  CHECK(theta(prof2, rq(-1)) == rq(0));
  CHECK(theta_slope(prof2, rq(-1)) == rq(2));
  CHECK(theta_slope(prof2, rq(1)) == rq(-2));
}

TEST_CASE("small admissible parameters always give positive profiles") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<long> xi(-5, 5);
  std::uniform_int_distribution<long> si(-500, 500);
  for (int trial = 0; trial < 100; ++trial) {
    long xn = 0;
    while (xn == 0) xn = xi(rng);
    std::vector<BaseBlock<Rational>> blocks{{rq(xn, 100), 1, rq(si(rng), 100)}};
    if (trial % 3 == 0) {
      long xn2 = 0;
      while (xn2 == 0) xn2 = xi(rng);
      blocks.push_back({rq(xn2, 100), 1, rq(si(rng), 100)});
    }
    AdmissibleSetup<Rational> s(blocks);
    WeightParams<Rational> w(rq(11 + static_cast<long>(rng() % 100), 10),
                             rq(s.fibre_dim_m() + 2 + static_cast<long>(rng() % 4)));
    auto prof = build_profile_ansatz(s, w);
    auto v = positivity(prof);
    CHECK(v.status == PositivityStatus::Positive);
  }
}
