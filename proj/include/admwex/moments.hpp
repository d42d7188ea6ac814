#ifndef ADMWEX_MOMENTS_HPP
#define ADMWEX_MOMENTS_HPP

#include <cmath>
#include <vector>

#include "admwex/errors.hpp"
#include "admwex/quadrature.hpp"
#include "admwex/rational_fn.hpp"
#include "admwex/setup.hpp"

namespace admwex {

// Affine coefficients of the weighted scalar curvature of the extremal
// profile: Scal = A1 z + A2.
template <ScalarMode K>
struct ExtremalConstants {
  K A1;
  K A2;
};

// ---------------------------------------------------------------------------
// Exact integrals of P(t) (t+a)^q over [lo, hi], integer q.
// Strategy: rewrite P in powers of u = t + a and integrate term by term.
// An exponent q + j == -1 yields a log antiderivative; in exact mode that is
// only allowed when its coefficient vanishes.
// ---------------------------------------------------------------------------
template <ScalarMode K>
K integrate_shifted(const Poly<K>& P, long q, const K& a, const K& lo, const K& hi) {
  if (P.is_zero()) return K(0);
  Poly<K> in_u = P.shifted(-a);  // coefficients of (t+a)^j
  K ulo = lo + a, uhi = hi + a;
  K total(0);
  for (int j = 0; j <= in_u.degree(); ++j) {
    K e = in_u.coeff(j);
    if (scalar_traits<K>::is_zero(e)) continue;
    long n = q + j;
    if (n == -1) {
      if constexpr (scalar_traits<K>::is_exact) {
        throw ExactLogObstruction("moment integral has a log((t+a)) term with nonzero coefficient");
      } else {
        total += e * std::log(uhi / ulo);
        continue;
      }
    }
    total += e * (pow_int(uhi, n + 1) - pow_int(ulo, n + 1)) / K(n + 1);
  }
  return total;
}

namespace detail {

template <ScalarMode K>
K poly_power_moment(const Poly<K>& P, const K& q, const K& a, const K& lo, const K& hi) {
  if constexpr (scalar_traits<K>::is_exact) {
    if (!scalar_traits<K>::is_integer(q))
      throw ExactLogObstruction("exact mode requires an integer weight exponent");
    return integrate_shifted(P, scalar_traits<K>::to_long(q), a, lo, hi);
  } else {
    // Always quadrature in float mode: the closed form re-expands P around
    // t = -a and cancels catastrophically once a is large.
    return integrate([&](double t) { return P.eval(t) * std::pow(t + a, q); }, lo, hi);
  }
}

}  // namespace detail

// alpha_{r,q} = int_{-1}^{1} (t+a)^q t^r p_c(t) dt
template <ScalarMode K>
K alpha(const AdmissibleSetup<K>& setup, const WeightParams<K>& w, int r, const K& q) {
  Poly<K> P = Poly<K>::identity().pow(r) * momentum_polynomial(setup);
  return detail::poly_power_moment(P, q, w.a, K(-1), K(1));
}

// beta_{r,q} = int_{-1}^{1} (sum_a x_a d_a s_a/(1+x_a t)) t^r p_c(t) (t+a)^q dt
//            + ((-1)^r (a-1)^q p_c(-1) + (1+a)^q p_c(1))
template <ScalarMode K>
K beta(const AdmissibleSetup<K>& setup, const WeightParams<K>& w, int r, const K& q) {
  Poly<K> P = Poly<K>::identity().pow(r) * curvature_density(setup);
  K integral = detail::poly_power_moment(P, q, w.a, K(-1), K(1));
  Poly<K> pc = momentum_polynomial(setup);
  K am1 = w.a - K(1), ap1 = w.a + K(1);
  K powm, powp;
  if constexpr (scalar_traits<K>::is_exact) {
    long qi = scalar_traits<K>::to_long(q);
    powm = pow_int(am1, qi);
    powp = pow_int(ap1, qi);
  } else {
    powm = std::pow(am1, q);
    powp = std::pow(ap1, q);
  }
  K sgn = (r % 2 == 0) ? K(1) : K(-1);
  return integral + sgn * powm * pc.eval(K(-1)) + powp * pc.eval(K(1));
}

// Unique solution (A1, A2) of the 2x2 moment system; the determinant
// alpha_1^2 - alpha_0 alpha_2 is negative by Cauchy-Schwarz, asserted here.
template <ScalarMode K>
ExtremalConstants<K> solve_extremal_constants(const AdmissibleSetup<K>& setup, const WeightParams<K>& w) {
  K qa = -(K(1) + w.p);
  K qb = K(1) - w.p;
  K a0 = alpha(setup, w, 0, qa);
  K a1 = alpha(setup, w, 1, qa);
  K a2 = alpha(setup, w, 2, qa);
  K b0 = beta(setup, w, 0, qb);
  K b1 = beta(setup, w, 1, qb);
  K det = a1 * a1 - a0 * a2;
  bool degenerate;
  if constexpr (scalar_traits<K>::is_exact) {
    degenerate = !(det < K(0));
  } else {
    degenerate = !(det < -1e-300) || !std::isfinite(det);
  }
  if (degenerate)
    throw MathInconsistency("moment system degenerate: alpha_1^2 - alpha_0 alpha_2 not negative");
  K two(2);
  return {(two * b0 * a1 - two * b1 * a0) / det, (two * b1 * a1 - two * b0 * a2) / det};
}

// ---------------------------------------------------------------------------
// Moments as rational functions of the weight parameter a (exact mode,
// integer q). Used to locate all roots of a |-> A1(a).
// ---------------------------------------------------------------------------
using RFn = RationalFn<Rational>;

namespace detail {

// Coefficients e_j(a) of P(t) = sum_j e_j(a) (t+a)^j as polynomials in a.
inline std::vector<RPoly> shifted_coeff_polys(const RPoly& P) {
  int n = P.degree();
  std::vector<RPoly> out;
  if (n < 0) return out;
  out.reserve(static_cast<std::size_t>(n) + 1);
  // e_j(a) = sum_{i>=j} gamma_i binom(i,j) (-a)^{i-j}
  std::vector<std::vector<Rational>> binom(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    binom[i].assign(static_cast<std::size_t>(i) + 1, Rational(1));
    for (int j = 1; j < i; ++j) binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j];
  }
  for (int j = 0; j <= n; ++j) {
    std::vector<Rational> c(static_cast<std::size_t>(n - j) + 1, Rational(0));
    for (int i = j; i <= n; ++i) {
      Rational v = P.coeff(i) * binom[i][j];
      if ((i - j) % 2 == 1) v = -v;
      c[static_cast<std::size_t>(i - j)] = v;
    }
    out.emplace_back(std::move(c));
  }
  return out;
}

// I_n(a) = int_{a-1}^{a+1} u^n du as a rational function of a.
inline RFn u_power_integral(long n) {
  RPoly am1 = RPoly::linear(Rational(-1), Rational(1));
  RPoly ap1 = RPoly::linear(Rational(1), Rational(1));
  if (n >= 0) {
    RPoly num = ap1.pow(static_cast<int>(n) + 1) - am1.pow(static_cast<int>(n) + 1);
    return RFn(num / Rational(n + 1));
  }
  if (n == -1) throw ExactLogObstruction("symbolic moment hit a log term");
  int M = static_cast<int>(-(n + 1));
  RPoly num = am1.pow(M) - ap1.pow(M);
  RPoly den = Rational(n + 1) * (ap1.pow(M) * am1.pow(M));
  return RFn(num, den);
}

inline RFn poly_power_moment_fn(const RPoly& P, long q) {
  RFn total;
  auto e = shifted_coeff_polys(P);
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e[j].is_zero()) continue;
    long n = q + static_cast<long>(j);
    if (n == -1)
      throw ExactLogObstruction("symbolic moment has a log term with nonzero coefficient");
    total = total + RFn(e[j]) * u_power_integral(n);
  }
  return total;
}

inline RFn boundary_power_fn(long q, bool at_minus_one) {
  RPoly base = at_minus_one ? RPoly::linear(Rational(-1), Rational(1))
                            : RPoly::linear(Rational(1), Rational(1));
  if (q >= 0) return RFn(base.pow(static_cast<int>(q)));
  return RFn(RPoly::constant(Rational(1)), base.pow(static_cast<int>(-q)));
}

}  // namespace detail

inline RFn alpha_fn(const AdmissibleSetup<Rational>& setup, int r, long q) {
  RPoly P = RPoly::identity().pow(r) * momentum_polynomial(setup);
  return detail::poly_power_moment_fn(P, q);
}

inline RFn beta_fn(const AdmissibleSetup<Rational>& setup, int r, long q) {
  RPoly P = RPoly::identity().pow(r) * curvature_density(setup);
  RFn total = detail::poly_power_moment_fn(P, q);
  RPoly pc = momentum_polynomial(setup);
  Rational sgn = (r % 2 == 0) ? Rational(1) : Rational(-1);
  total = total + detail::boundary_power_fn(q, true) * (sgn * pc.eval(Rational(-1)));
  total = total + detail::boundary_power_fn(q, false) * pc.eval(Rational(1));
  return total;
}

struct SymbolicConstants {
  RFn A1;
  RFn A2;
};

inline SymbolicConstants solve_extremal_constants_fn(const AdmissibleSetup<Rational>& setup, long p) {
  long qa = -(1 + p);
  long qb = 1 - p;
  RFn a0 = alpha_fn(setup, 0, qa);
  RFn a1 = alpha_fn(setup, 1, qa);
  RFn a2 = alpha_fn(setup, 2, qa);
  RFn b0 = beta_fn(setup, 0, qb);
  RFn b1 = beta_fn(setup, 1, qb);
  RFn det = a1 * a1 - a0 * a2;
  if (det.is_zero()) throw MathInconsistency("symbolic moment system degenerate");
  Rational two(2);
  return {(b0 * a1 - b1 * a0) * two / det, (b1 * a1 - b0 * a2) * two / det};
}

}  // namespace admwex

#endif  // ADMWEX_MOMENTS_HPP
