#ifndef ADMWEX_EINSTEIN_MAXWELL_HPP
#define ADMWEX_EINSTEIN_MAXWELL_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "admwex/stability.hpp"

namespace admwex {

// ---------------------------------------------------------------------------
// Closed-form reference data for the p = 2m specializations: the duality
// root a0(x), the Hodge-4 and O(1,-1) cofactor polynomials, the Yamabe
// profile of the first Hirzebruch surface, and the double-root discriminant.
// ---------------------------------------------------------------------------
namespace closed_forms {

inline double hirzebruch_a0(double x) { return (1.0 + std::sqrt(1.0 - x * x)) / x; }

struct HirzebruchRoots {
  double a0;
  std::optional<double> a_plus;
  std::optional<double> a_minus;
};

// a0 = (1+sqrt(1-x^2))/x always; a± = (x ± sqrt(x(5x-4)))/(2(1-x)) once
// x >= 4/5. Ordering 1 < a- <= a0 <= a+ is asserted.
inline HirzebruchRoots hirzebruch_closed_forms(double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("hirzebruch_closed_forms: x must be in (0,1)");
  HirzebruchRoots out{hirzebruch_a0(x), std::nullopt, std::nullopt};
  double disc = x * (5.0 * x - 4.0);
  if (disc >= 0.0) {
    double r = std::sqrt(disc);
    out.a_plus = (x + r) / (2.0 * (1.0 - x));
    out.a_minus = (x - r) / (2.0 * (1.0 - x));
    double slack = 1e-12 * (1.0 + out.a0);
    if (!(*out.a_minus > 1.0 && *out.a_minus <= out.a0 + slack && out.a0 <= *out.a_plus + slack))
      throw MathInconsistency("hirzebruch_closed_forms: root ordering violated");
  }
  return out;
}

// Normalized Einstein-Hilbert profile of h_t on the first Hirzebruch surface.
inline double hirzebruch_yamabe_f(double x, double t) {
  double num = 1.0 - 2.0 * x - 2.0 * x * t + (1.0 + 2.0 * x) * t * t;
  double den = std::sqrt(x * (1.0 - 4.0 * x * t + 3.0 * t * t) * (t * t - 1.0));
  return 4.0 * M_PI * std::sqrt(6.0) * num / den;
}

// Degree-6 cofactor q(a, x) of A1 for the Hodge 4-manifold base (single
// block of dimension 2, scalar curvature parameter s), in the variable a.
inline RPoly hodge4_q(const Rational& x, const Rational& s) {
  Rational one(1);
  Rational omx = one - x;
  std::vector<Rational> g(7);
  g[0] = Rational(96) * omx * omx * omx;
  g[1] = Rational(32) * omx * omx * (Rational(12) - Rational(9) * x - s * x);
  g[2] = Rational(8) * omx *
         (Rational(87) - Rational(120) * x - Rational(16) * s * x + Rational(39) * x * x +
          Rational(10) * s * x * x);
  g[3] = Rational(8) * omx *
         (Rational(93) - Rational(81) * x - Rational(29) * s * x + Rational(18) * x * x +
          Rational(3) * s * x * x);
  g[4] = Rational(2) * (Rational(243) - Rational(315) * x - Rational(104) * s * x + Rational(99) * x * x +
                        Rational(70) * s * x * x - Rational(15) * x * x * x + Rational(22) * s * x * x * x);
  g[5] = Rational(2) * (Rational(90) - Rational(63) * x - Rational(45) * s * x + Rational(14) * s * x * x -
                        Rational(3) * x * x * x + Rational(15) * s * x * x * x);
  g[6] = Rational(5) * (Rational(6) - Rational(2) * s + s * (Rational(2) + x) * omx * omx);
  // coefficients above are in powers of (a-1)
  return RPoly(std::move(g)).shifted(Rational(-1));
}

// Quartic cofactor of q(a, x) on the tangency locus x = 2s/(1+s^2), where
// q = 2 (a-s)^2/(1+s^2)^3 * quartic and a0(x) = s.
inline RPoly hodge4_tangency_quartic(const Rational& s) {
  Rational s2 = s * s, s4 = s2 * s2;
  return RPoly({Rational(15) - Rational(2) * s2 + Rational(3) * s4,
                Rational(-32) * s * (Rational(3) + s2),
                Rational(2) * (Rational(9) + Rational(130) * s2 + Rational(5) * s4),
                Rational(-32) * s * (Rational(3) + Rational(5) * s2),
                Rational(5) * (Rational(3) + Rational(6) * s2 + Rational(7) * s4)});
}

// Degree-8 polynomial q(x1, x2, a) whose roots |a| > 1 mark the
// Einstein-Maxwell classes on P(O + O(1,-1)) over CP^1 x CP^1.
inline RPoly koiso_sakane_q(const Rational& x1, const Rational& x2) {
  Rational x12 = x1 * x2;
  std::vector<Rational> g(9);
  g[0] = Rational(-3) * (x1 + x2) * (x1 - x2 + x12);
  g[1] = Rational(3) * (Rational(2) * x1 + Rational(3) * x1 * x1 - Rational(2) * x2 + Rational(8) * x12 +
                        Rational(2) * x1 * x12 + Rational(3) * x2 * x2 - Rational(2) * x2 * x12 +
                        Rational(2) * x12 * x12);
  g[2] = Rational(-3) * (x1 + x2) * (Rational(15) - Rational(2) * x1 + Rational(2) * x2 + Rational(17) * x12);
  g[3] = Rational(60) - Rational(10) * x1 + Rational(45) * x1 * x1 + Rational(10) * x2 + Rational(240) * x12 -
         Rational(18) * x1 * x12 + Rational(45) * x2 * x2 + Rational(18) * x2 * x12 + Rational(90) * x12 * x12;
  g[4] = Rational(-5) * (x1 + x2) * (Rational(33) + Rational(4) * x1 - Rational(4) * x2 + Rational(45) * x12);
  g[5] = Rational(72) + Rational(34) * x1 + Rational(123) * x1 * x1 - Rational(34) * x2 + Rational(408) * x12 +
         Rational(50) * x1 * x12 + Rational(123) * x2 * x2 - Rational(50) * x2 * x12 + Rational(90) * x12 * x12;
  g[6] = -(x1 + x2) * (Rational(159) - Rational(2) * x1 + Rational(2) * x2 + Rational(105) * x12);
  g[7] = Rational(60) - Rational(30) * x1 + Rational(15) * x1 * x1 + Rational(30) * x2 + Rational(96) * x12 -
         Rational(38) * x1 * x12 + Rational(15) * x2 * x2 + Rational(38) * x2 * x12 + Rational(6) * x12 * x12;
  g[8] = Rational(15) * (Rational(-1) + x1 - x2) * (x1 + x2);
  return RPoly(std::move(g));
}

}  // namespace closed_forms

// D_s(x): vanishing marks admissible classes whose profile acquires an
// interior double root at a = a0(x), p = 4.
inline double double_root_discriminant(double s, double x) {
  if (!(x > 0.0 && x < 1.0)) throw std::invalid_argument("double_root_discriminant: x must be in (0,1)");
  double root = std::sqrt(1.0 - x * x);
  return 12.0 + 12.0 * s * x - 19.0 * x * x - 12.0 * s * x * x * x + (7.0 + s * s) * std::pow(x, 4) +
         6.0 * (2.0 + 2.0 * s * x - 2.0 * x * x - s * x * x * x) * root;
}

// Exact evaluation, defined when 1 - x^2 is a rational square.
inline std::optional<Rational> double_root_discriminant_exact(const Rational& s, const Rational& x) {
  Rational root;
  if (!sqrt_exact(Rational(1) - x * x, root)) return std::nullopt;
  Rational x2 = x * x, x3 = x2 * x, x4 = x2 * x2;
  return Rational(12) + Rational(12) * s * x - Rational(19) * x2 - Rational(12) * s * x3 +
         (Rational(7) + s * s) * x4 +
         Rational(6) * (Rational(2) + Rational(2) * s * x - Rational(2) * x2 - s * x3) * root;
}

// ---------------------------------------------------------------------------
// A1 as a function of the weight parameter a.
// ---------------------------------------------------------------------------
inline RFn a1_as_function_of_a(const AdmissibleSetup<Rational>& setup, long p) {
  return solve_extremal_constants_fn(setup, p).A1;
}

// beta_0 alpha_1 - beta_1 alpha_0: the Cramer numerator of A1 over the
// canonical denominator ((a-1)(a+1))^{2p-2}. Same zero set on a > 1 as A1
// itself (the moment determinant is negative there); this is the quantity
// the closed-form factorizations are stated for.
inline RFn a1_vanishing_form(const AdmissibleSetup<Rational>& setup, long p) {
  long qa = -(1 + p);
  long qb = 1 - p;
  return beta_fn(setup, 0, qb) * alpha_fn(setup, 1, qa) - beta_fn(setup, 1, qb) * alpha_fn(setup, 0, qa);
}

inline std::function<double(double)> a1_as_function_of_a(const AdmissibleSetup<double>& setup, double p) {
  return [setup, p](double a) {
    WeightParams<double> w(a, p);
    return solve_extremal_constants(setup, w).A1;
  };
}

// ---------------------------------------------------------------------------
// Einstein-Maxwell parameter search: roots of A1(a) = 0 on a > 1, each with
// the profile at the root and its positivity verdict.
// ---------------------------------------------------------------------------
struct EMSolution {
  double a_root;
  int multiplicity;  // exact path: exact; float path: 1 (sign change) or 2 (tangency)
  double A2_at_root;
  Profile<double> profile;
  PositivityVerdict<double> positivity_report;
  double hermitian_scalar_curvature;  // equals A2 when p = 2m
};

namespace detail {

inline AdmissibleSetup<double> to_float_setup(const AdmissibleSetup<Rational>& s) {
  std::vector<BaseBlock<double>> blocks;
  for (const auto& b : s.base_blocks()) blocks.push_back({b.x.to_double(), b.d, b.s.to_double()});
  return AdmissibleSetup<double>(blocks, s.d0(), s.dinf());
}

inline EMSolution make_em_solution(const AdmissibleSetup<double>& sf, double p, double a_root, int mult) {
  WeightParams<double> w(a_root, p);
  bool integer_p = scalar_traits<double>::is_integer(p);
  int m = sf.fibre_dim_m();
  long pi = integer_p ? static_cast<long>(std::llround(p)) : 0;
  Profile<double> prof = (integer_p && (pi >= m + 2 || pi <= -1)) ? build_profile_ansatz(sf, w)
                                                                  : build_profile_integral(sf, w);
  auto pos = positivity(prof);
  double A2 = prof.constants().A2;
  return EMSolution{a_root, mult, A2, prof, pos, A2};
}

}  // namespace detail

// Exact path: isolate the numerator roots of A1(a) on (1, oo); no cap needed.
inline std::vector<EMSolution> find_em_parameters(const AdmissibleSetup<Rational>& setup, long p) {
  RFn a1 = a1_as_function_of_a(setup, p);
  std::vector<EMSolution> out;
  if (a1.is_zero()) return out;
  Rational bound = cauchy_root_bound(a1.num());
  if (bound <= Rational(1)) return out;
  auto roots = isolate_roots(a1.num(), Rational(1), bound);
  AdmissibleSetup<double> sf = detail::to_float_setup(setup);
  for (auto& r : roots) {
    auto tight = refine_root(r, Rational(1, 1L << 46));
    double a_root = tight.mid().to_double();
    if (!(a_root > 1.0)) continue;
    out.push_back(detail::make_em_solution(sf, static_cast<double>(p), a_root, tight.multiplicity));
  }
  return out;
}

// Float path: bracket sign changes of A1 on a log-spaced grid, bisect to
// 1e-12, and flag tangent (even-order) zeros separately.
inline std::vector<EMSolution> find_em_parameters(const AdmissibleSetup<double>& setup, double p,
                                                  double a_max = 1e3, int grid_points = 512) {
  auto a1 = a1_as_function_of_a(setup, p);
  std::vector<double> as(static_cast<std::size_t>(grid_points)), vs(as.size());
  const double lo = 1e-3, hi = a_max - 1.0;
  double scale = 0.0;
  for (int i = 0; i < grid_points; ++i) {
    double t = static_cast<double>(i) / (grid_points - 1);
    as[i] = 1.0 + lo * std::pow(hi / lo, t);
    vs[i] = a1(as[i]);
    scale = std::max(scale, std::fabs(vs[i]));
  }
  std::vector<double> crossings;
  for (int i = 0; i + 1 < grid_points; ++i) {
    if (vs[i] == 0.0) {
      crossings.push_back(as[i]);
    } else if ((vs[i] < 0) != (vs[i + 1] < 0)) {
      crossings.push_back(bisect(a1, as[i], as[i + 1], 1e-12));
    }
  }
  std::vector<EMSolution> out;
  for (double root : crossings) out.push_back(detail::make_em_solution(setup, p, root, 1));
  // Tangent (even-order) zeros: interior minima of |A1| with no sign change
  // nearby, below tolerance after refinement.
  for (int i = 1; i + 1 < grid_points; ++i) {
    bool same_sign = (vs[i - 1] < 0) == (vs[i] < 0) && (vs[i] < 0) == (vs[i + 1] < 0);
    if (!same_sign || std::fabs(vs[i]) > std::fabs(vs[i - 1]) || std::fabs(vs[i]) > std::fabs(vs[i + 1]))
      continue;
    double amin = golden_section_min([&](double a) { return std::fabs(a1(a)); }, as[i - 1], as[i + 1], 1e-12);
    if (std::fabs(a1(amin)) > 1e-8 * std::max(scale, 1e-30)) continue;
    bool near_crossing = false;
    for (double root : crossings)
      if (std::fabs(root - amin) < 1e-6 * std::max(1.0, root)) near_crossing = true;
    if (!near_crossing) out.push_back(detail::make_em_solution(setup, p, amin, 2));
  }
  std::sort(out.begin(), out.end(), [](const EMSolution& a, const EMSolution& b) { return a.a_root < b.a_root; });
  return out;
}

// ---------------------------------------------------------------------------
// Yamabe-type functional of the conformal family h_t = (z+t)^{-2} g at
// p = 2m, up to the class-independent base-volume constant:
//   S(t) = int Scal(h_t) (z+t)^{-2m} p_c dz / (int (z+t)^{-2m} p_c dz)^{(m-1)/m}
// evaluated with the canonical profile unless another is supplied. The
// p_c in the numerator cancels the curvature denominator, so both integrals
// reduce to closed forms.
// ---------------------------------------------------------------------------
inline double yamabe_functional(const AdmissibleSetup<double>& setup, double t,
                                const Poly<double>* profile = nullptr) {
  if (!(t > 1.0)) throw std::invalid_argument("yamabe_functional: require t > 1");
  const int m = setup.fibre_dim_m();
  const double p = 2.0 * m;
  Poly<double> pc = momentum_polynomial(setup);
  Poly<double> F = profile ? *profile : Poly<double>({1.0, 0.0, -1.0}) * pc;
  Poly<double> s = Poly<double>::linear(t, 1.0);
  Poly<double> N = -(s * s * F.derivative().derivative()) + 2.0 * (p - 1.0) * (s * F.derivative()) -
                   p * (p - 1.0) * F + 2.0 * (s * s * curvature_density(setup));
  double num = integrate([&](double z) { return N.eval(z) * std::pow(z + t, -p); }, -1.0, 1.0);
  double vol = integrate([&](double z) { return pc.eval(z) * std::pow(z + t, -p); }, -1.0, 1.0);
  return num / std::pow(vol, (m - 1.0) / m);
}

// ---------------------------------------------------------------------------
// Conformally Einstein profiles: solve the four endpoint conditions for
// (lambda+, lambda-, x_e, a_e) at p = 2m over a single block of dimension
// m-1 with normalized base curvature s > 1. Damped Newton in (x, a) with the
// lambdas eliminated by the linear endpoint-value conditions.
// ---------------------------------------------------------------------------
struct EinsteinSolveControls {
  int grid_x = 16;
  int grid_a = 16;
  double x_lo = 0.05, x_hi = 0.95;
  double a_lo = 1.05, a_hi = 20.0;
  double tol = 1e-12;
  int max_iter = 80;
};

struct EinsteinBranch {
  double a;
  double lambda_plus;
  double lambda_minus;
};

struct EinsteinSolution {
  double x_e;
  EinsteinBranch upper;  // larger a
  EinsteinBranch lower;  // smaller a
  Profile<double> profile;
  PositivityVerdict<double> positivity_report;
  double residual;
};

namespace detail {

struct EinsteinParts {
  Poly<double> plus, minus, source;  // F = l+ * plus - l- * minus + s * source
};

inline double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

inline EinsteinParts einstein_parts(int m, double x, double a) {
  EinsteinParts parts;
  Poly<double> B = Poly<double>::linear(1.0 / x, 1.0);  // z + 1/x
  double scale = std::pow(x, m - 1);
  double gap = a - 1.0 / x;
  Poly<double> plus, minus;
  for (int j = 1; j <= m; ++j) {
    double cj = (static_cast<double>(j) / m) * binom(2 * m, m + j);
    plus = plus + cj * std::pow(gap, m - j) * B.pow(m + j);
    minus = minus + cj * std::pow(gap, j - 1) * B.pow(m - j);
  }
  // The source weight 2/m is pinned by the extremal ODE: with it, the whole
  // family maps into multiples of p_c under the p = 2m operator.
  parts.plus = scale * plus;
  parts.minus = scale * minus;
  parts.source = scale * (2.0 / m) * B.pow(m);
  return parts;
}

struct EinsteinResidual {
  double r1, r2;
  double lambda_plus, lambda_minus;
  Poly<double> F;
};

inline std::optional<EinsteinResidual> einstein_residual(int m, double s, double x, double a) {
  if (!(x > 0.0 && x < 1.0 && a > 1.0)) return std::nullopt;
  auto parts = einstein_parts(m, x, a);
  // lambda+ P+(sigma) - lambda- P-(sigma) = -s P0(sigma) at sigma = +-1
  double m00 = parts.plus.eval(1.0), m01 = -parts.minus.eval(1.0);
  double m10 = parts.plus.eval(-1.0), m11 = -parts.minus.eval(-1.0);
  double b0 = -s * parts.source.eval(1.0), b1 = -s * parts.source.eval(-1.0);
  double det = m00 * m11 - m01 * m10;
  if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
  double lp = (b0 * m11 - m01 * b1) / det;
  double lm = (m00 * b1 - b0 * m10) / det;
  Poly<double> F = lp * parts.plus - lm * parts.minus + s * parts.source;
  Poly<double> pc = Poly<double>::linear(1.0, x).pow(m - 1);
  double r1 = F.derivative().eval(1.0) + 2.0 * pc.eval(1.0);
  double r2 = F.derivative().eval(-1.0) - 2.0 * pc.eval(-1.0);
  if (!std::isfinite(r1) || !std::isfinite(r2)) return std::nullopt;
  return EinsteinResidual{r1, r2, lp, lm, F};
}

}  // namespace detail

inline EinsteinSolution conformally_einstein_profile(int m, double s, EinsteinSolveControls ctl = {}) {
  if (m < 2) throw std::invalid_argument("conformally_einstein_profile: require m >= 2");
  if (!(s > 1.0)) throw std::invalid_argument("conformally_einstein_profile: require s > 1");

  struct Converged {
    double x, a, lp, lm, res;
  };
  std::vector<Converged> found;
  double best_res = std::numeric_limits<double>::infinity();

  auto norm = [](double r1, double r2) { return std::max(std::fabs(r1), std::fabs(r2)); };

  for (int ix = 0; ix < ctl.grid_x; ++ix) {
    for (int ia = 0; ia < ctl.grid_a; ++ia) {
      double x = ctl.x_lo + (ctl.x_hi - ctl.x_lo) * (ix + 0.5) / ctl.grid_x;
      double a = ctl.a_lo * std::pow(ctl.a_hi / ctl.a_lo, (ia + 0.5) / ctl.grid_a);
      auto cur = detail::einstein_residual(m, s, x, a);
      if (!cur) continue;
      double res = norm(cur->r1, cur->r2);
      bool ok = false;
      for (int it = 0; it < ctl.max_iter; ++it) {
        if (res <= ctl.tol * (1.0 + std::fabs(s))) {
          ok = true;
          break;
        }
        double hx = std::max(1e-9, 1e-7 * std::fabs(x));
        double ha = std::max(1e-9, 1e-7 * std::fabs(a));
        auto fx = detail::einstein_residual(m, s, x + hx, a);
        auto fa = detail::einstein_residual(m, s, x, a + ha);
        if (!fx || !fa) break;
        double j00 = (fx->r1 - cur->r1) / hx, j01 = (fa->r1 - cur->r1) / ha;
        double j10 = (fx->r2 - cur->r2) / hx, j11 = (fa->r2 - cur->r2) / ha;
        double det = j00 * j11 - j01 * j10;
        if (det == 0.0 || !std::isfinite(det)) break;
        double dx = -(cur->r1 * j11 - j01 * cur->r2) / det;
        double da = -(j00 * cur->r2 - cur->r1 * j10) / det;
        // damping by halving
        double step = 1.0;
        bool improved = false;
        for (int halve = 0; halve < 40; ++halve, step *= 0.5) {
          double xn = x + step * dx, an = a + step * da;
          auto nxt = detail::einstein_residual(m, s, xn, an);
          if (!nxt) continue;
          double rn = norm(nxt->r1, nxt->r2);
          if (rn < res) {
            x = xn;
            a = an;
            cur = nxt;
            res = rn;
            improved = true;
            break;
          }
        }
        if (!improved) break;
      }
      best_res = std::min(best_res, res);
      // The x -> 1 edge hosts a degenerate continuum (a0(x) -> 1); keep
      // converged solutions strictly inside the admissible range.
      if (ok && x > 0.005 && x < 0.99 && a > 1.0) {
        bool dup = false;
        for (const auto& c : found)
          if (std::fabs(c.x - x) < 1e-6 && std::fabs(c.a - a) < 1e-6 * std::max(1.0, c.a)) dup = true;
        if (!dup) found.push_back({x, a, cur->lambda_plus, cur->lambda_minus, res});
      }
    }
  }

  if (found.empty())
    throw MathInconsistency("conformally_einstein_profile: no convergence (best residual " +
                            std::to_string(best_res) + ")");
  for (const auto& c : found)
    if (std::fabs(c.x - found.front().x) > 1e-6)
      throw MathInconsistency("conformally_einstein_profile: distinct x solutions found");

  // The endpoint system has a unique interior solution when the two
  // inversion-related branches collapse at the self-inverse weight
  // a = (1+sqrt(1-x^2))/x; report the pair as equal in that case.
  std::sort(found.begin(), found.end(), [](const Converged& a, const Converged& b) { return a.a < b.a; });
  Converged lo_branch = found.front(), hi_branch = found.back();

  double x_e = 0.5 * (lo_branch.x + hi_branch.x);
  AdmissibleSetup<double> setup({{x_e, m - 1, s}});
  WeightParams<double> w(hi_branch.a, 2.0 * m);
  Profile<double> prof = build_profile_ansatz(setup, w);
  auto pos = positivity(prof);
  return EinsteinSolution{x_e,
                          {hi_branch.a, hi_branch.lp, hi_branch.lm},
                          {lo_branch.a, lo_branch.lp, lo_branch.lm},
                          prof,
                          pos,
                          std::max(lo_branch.res, hi_branch.res)};
}

// The Einstein ansatz polynomial for explicit cross-checks.
inline Poly<double> einstein_candidate_poly(int m, double s, double x, double a, double lambda_plus,
                                            double lambda_minus) {
  auto parts = detail::einstein_parts(m, x, a);
  return lambda_plus * parts.plus - lambda_minus * parts.minus + s * parts.source;
}

}  // namespace admwex

#endif  // ADMWEX_EINSTEIN_MAXWELL_HPP
