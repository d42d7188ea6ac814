#ifndef ADMWEX_PROFILE_HPP
#define ADMWEX_PROFILE_HPP

#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "admwex/errors.hpp"
#include "admwex/moments.hpp"
#include "admwex/roots.hpp"

namespace admwex {

namespace detail {

// s^e with scalar-typed integer-or-real exponent.
template <ScalarMode K>
K spow(const K& s, const K& e) {
  if constexpr (scalar_traits<K>::is_exact) {
    return pow_int(s, scalar_traits<K>::to_long(e));
  } else {
    return std::pow(s, e);
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Q(z) = 2 cd(z) (z+a)^{1-p} - (A1 z + A2) p_c(z) (z+a)^{-(p+1)},
// the source term of the profile ODE G'' = Q. Exposes two derivatives.
// ---------------------------------------------------------------------------
template <ScalarMode K>
class QEvaluator {
 public:
  QEvaluator(const AdmissibleSetup<K>& setup, const WeightParams<K>& w, const ExtremalConstants<K>& ab)
      : a_(w.a), p_(w.p) {
    cd2_ = K(2) * curvature_density(setup);
    pcA_ = Poly<K>::linear(ab.A2, ab.A1) * momentum_polynomial(setup);
  }

  K eval(const K& z) const {
    K s = z + a_;
    return cd2_.eval(z) * detail::spow(s, K(1) - p_) - pcA_.eval(z) * detail::spow(s, -(K(1) + p_));
  }

  K d1(const K& z) const {
    K s = z + a_;
    K e1 = K(1) - p_, e2 = -(K(1) + p_);
    return cd2_.derivative().eval(z) * detail::spow(s, e1) + e1 * cd2_.eval(z) * detail::spow(s, e1 - K(1)) -
           pcA_.derivative().eval(z) * detail::spow(s, e2) - e2 * pcA_.eval(z) * detail::spow(s, e2 - K(1));
  }

  K d2(const K& z) const {
    K s = z + a_;
    K e1 = K(1) - p_, e2 = -(K(1) + p_);
    Poly<K> cd2p = cd2_.derivative();
    Poly<K> pcAp = pcA_.derivative();
    return cd2p.derivative().eval(z) * detail::spow(s, e1) + K(2) * e1 * cd2p.eval(z) * detail::spow(s, e1 - K(1)) +
           e1 * (e1 - K(1)) * cd2_.eval(z) * detail::spow(s, e1 - K(2)) -
           pcAp.derivative().eval(z) * detail::spow(s, e2) - K(2) * e2 * pcAp.eval(z) * detail::spow(s, e2 - K(1)) -
           e2 * (e2 - K(1)) * pcA_.eval(z) * detail::spow(s, e2 - K(2));
  }

 private:
  Poly<K> cd2_;
  Poly<K> pcA_;
  K a_, p_;
};

template <ScalarMode K>
QEvaluator<K> build_Q(const AdmissibleSetup<K>& setup, const WeightParams<K>& w,
                      const ExtremalConstants<K>& ab) {
  return QEvaluator<K>(setup, w, ab);
}

// ---------------------------------------------------------------------------
// Barycentric interpolation on Chebyshev-Lobatto nodes (numeric builder cache).
// ---------------------------------------------------------------------------
struct ChebInterpolant {
  std::vector<double> x;   // ascending, x.front() == -1, x.back() == +1
  std::vector<double> fx;

  double eval(double z) const {
    // Lobatto barycentric weights are (-1)^j, halved at the two ends.
    double num = 0.0, den = 0.0;
    const std::size_t n = x.size();
    for (std::size_t j = 0; j < n; ++j) {
      double d = z - x[j];
      if (d == 0.0) return fx[j];
      double w = (j % 2 == 0) ? 1.0 : -1.0;
      if (j == 0 || j == n - 1) w *= 0.5;
      double t = w / d;
      num += t * fx[j];
      den += t;
    }
    return num / den;
  }
};

enum class ProfileKind { ExactAnsatz, Numeric };

// ---------------------------------------------------------------------------
// The extremal fibre profile F(z). Exact kind stores the coefficients of
// F(z) = sum_{k=0}^{m} c_k (z+a)^k + c_{p-1} (z+a)^{p-1} + c_p (z+a)^p;
// numeric kind stores a Chebyshev cache of G = F/(z+a)^{p-1} and G'.
// ---------------------------------------------------------------------------
template <ScalarMode K>
class Profile {
 public:
  const AdmissibleSetup<K>& setup() const { return setup_; }
  const WeightParams<K>& weight() const { return w_; }
  const ExtremalConstants<K>& constants() const { return ab_; }
  ProfileKind kind() const { return kind_; }

  // F, F', F''
  K value(const K& z) const {
    if (kind_ == ProfileKind::ExactAnsatz) {
      K s = z + w_.a;
      K f(0);
      for (int k = 0; k <= static_cast<int>(poly_coeffs_.size()) - 1; ++k)
        f += poly_coeffs_[k] * pow_int(s, k);
      f += c_pm1_ * detail::spow(s, w_.p - K(1)) + c_p_ * detail::spow(s, w_.p);
      return f;
    }
    if constexpr (scalar_traits<K>::is_exact) {
      throw std::logic_error("Profile: exact scalar with numeric kind");
    } else {
      double g = gcache_.eval(z);
      return std::pow(z + ad_, pd_ - 1.0) * g;
    }
  }

  K deriv(const K& z) const {
    if (kind_ == ProfileKind::ExactAnsatz) {
      K s = z + w_.a;
      K f(0);
      for (int k = 1; k <= static_cast<int>(poly_coeffs_.size()) - 1; ++k)
        f += K(k) * poly_coeffs_[k] * pow_int(s, k - 1);
      f += (w_.p - K(1)) * c_pm1_ * detail::spow(s, w_.p - K(2)) + w_.p * c_p_ * detail::spow(s, w_.p - K(1));
      return f;
    }
    if constexpr (scalar_traits<K>::is_exact) {
      throw std::logic_error("Profile: exact scalar with numeric kind");
    } else {
      double s = z + ad_;
      double g = gcache_.eval(z), g1 = g1cache_.eval(z);
      return (pd_ - 1.0) * std::pow(s, pd_ - 2.0) * g + std::pow(s, pd_ - 1.0) * g1;
    }
  }

  K second(const K& z) const {
    if (kind_ == ProfileKind::ExactAnsatz) {
      K s = z + w_.a;
      K f(0);
      for (int k = 2; k <= static_cast<int>(poly_coeffs_.size()) - 1; ++k)
        f += K(k) * K(k - 1) * poly_coeffs_[k] * pow_int(s, k - 2);
      f += (w_.p - K(1)) * (w_.p - K(2)) * c_pm1_ * detail::spow(s, w_.p - K(3)) +
           w_.p * (w_.p - K(1)) * c_p_ * detail::spow(s, w_.p - K(2));
      return f;
    }
    if constexpr (scalar_traits<K>::is_exact) {
      throw std::logic_error("Profile: exact scalar with numeric kind");
    } else {
      double s = z + ad_;
      double g = gcache_.eval(z), g1 = g1cache_.eval(z), g2 = q_->eval(z);
      return (pd_ - 1.0) * (pd_ - 2.0) * std::pow(s, pd_ - 3.0) * g +
             2.0 * (pd_ - 1.0) * std::pow(s, pd_ - 2.0) * g1 + std::pow(s, pd_ - 1.0) * g2;
    }
  }

  // G = F/(z+a)^{p-1} and its second derivative (equals Q on solutions).
  K g_value(const K& z) const {
    K s = z + w_.a;
    return value(z) * detail::spow(s, K(1) - w_.p);
  }
  K g_second(const K& z) const {
    if (kind_ == ProfileKind::Numeric) {
      if constexpr (scalar_traits<K>::is_exact) {
        throw std::logic_error("Profile: exact scalar with numeric kind");
      } else {
        return q_->eval(z);
      }
    }
    K s = z + w_.a;
    K e = K(1) - w_.p;
    return detail::spow(s, e) * second(z) + K(2) * e * detail::spow(s, e - K(1)) * deriv(z) +
           w_.p * (w_.p - K(1)) * detail::spow(s, e - K(2)) * value(z);
  }

  // Exact kind only: coefficient of (z+a)^k (k in {0..m} or {p-1, p}).
  K basis_coeff(long k) const {
    require_exact();
    if (k >= 0 && k < static_cast<long>(poly_coeffs_.size())) return poly_coeffs_[static_cast<std::size_t>(k)];
    long pi = w_.p_int();
    if (k == pi - 1) return c_pm1_;
    if (k == pi) return c_p_;
    return K(0);
  }

  // Exact kind only: a z-polynomial with the sign of F on (-1, 1).
  // p >= m+2 gives F itself; p <= -1 gives G = F (z+a)^{1-p}.
  Poly<K> sign_polynomial() const {
    require_exact();
    long pi = w_.p_int();
    std::vector<K> u;
    if (pi >= 2) {
      u.assign(static_cast<std::size_t>(pi) + 1, K(0));
      for (std::size_t k = 0; k < poly_coeffs_.size(); ++k) u[k] = poly_coeffs_[k];
      u[static_cast<std::size_t>(pi - 1)] += c_pm1_;
      u[static_cast<std::size_t>(pi)] += c_p_;
    } else {
      long shift = 1 - pi;  // >= 2
      u.assign(poly_coeffs_.size() + static_cast<std::size_t>(shift), K(0));
      for (std::size_t k = 0; k < poly_coeffs_.size(); ++k) u[k + static_cast<std::size_t>(shift)] = poly_coeffs_[k];
      u[0] += c_pm1_;
      u[1] += c_p_;
    }
    return Poly<K>(std::move(u)).shifted(w_.a);
  }

  // Exact kind, p >= m+2 only: F as a z-polynomial.
  Poly<K> as_polynomial() const {
    require_exact();
    if (w_.p_int() < 2) throw std::domain_error("Profile: F is not polynomial for p <= -1");
    return sign_polynomial();
  }

  double endpoint_residual_scale() const { return scale_; }

  template <ScalarMode K2>
  friend Profile<K2> build_profile_ansatz(const AdmissibleSetup<K2>&, const WeightParams<K2>&);
  friend Profile<double> build_profile_integral(const AdmissibleSetup<double>&, const WeightParams<double>&,
                                                int, double);

 private:
  Profile(AdmissibleSetup<K> setup, WeightParams<K> w, ExtremalConstants<K> ab, ProfileKind kind)
      : setup_(std::move(setup)), w_(std::move(w)), ab_(std::move(ab)), kind_(kind) {}

  void require_exact() const {
    if (kind_ != ProfileKind::ExactAnsatz)
      throw std::domain_error("Profile: operation requires the exact ansatz representation");
  }

  AdmissibleSetup<K> setup_;
  WeightParams<K> w_;
  ExtremalConstants<K> ab_;
  ProfileKind kind_;

  // exact data
  std::vector<K> poly_coeffs_;  // c_0..c_m in the (z+a) basis
  K c_pm1_{0}, c_p_{0};

  // numeric data
  ChebInterpolant gcache_, g1cache_;
  std::shared_ptr<QEvaluator<double>> q_;
  double ad_ = 0, pd_ = 0;
  double scale_ = 1;
};

// ---------------------------------------------------------------------------
// Polynomial ansatz builder (integer p outside {0,...,m+1}).
// The ODE operator is diagonal on (z+a)^k with eigenvalue
// mu_k = -(k-p)(k-p+1); the four endpoint conditions close the system in
// (A1, A2, c_{p-1}, c_p).
// ---------------------------------------------------------------------------
template <ScalarMode K>
Profile<K> build_profile_ansatz(const AdmissibleSetup<K>& setup, const WeightParams<K>& w) {
  const int m = setup.fibre_dim_m();
  if (!w.p_is_integer()) throw std::invalid_argument("ansatz builder: p must be an integer");
  const long p = w.p_int();
  if (p >= 0 && p <= m + 1)
    throw std::invalid_argument("ansatz builder: integer p in {0,...,m+1} hits a zero eigenvalue");

  Poly<K> pc = momentum_polynomial(setup);
  Poly<K> cd = curvature_density(setup);
  Poly<K> s2 = Poly<K>::linear(w.a, K(1)) * Poly<K>::linear(w.a, K(1));

  // RHS of the extremal ODE split into constant / A1 / A2 parts, in the
  // (z+a) basis.
  Poly<K> Rc = (K(-2) * s2 * cd).shifted(-w.a);
  Poly<K> R1 = (Poly<K>::identity() * pc).shifted(-w.a);
  Poly<K> R2 = pc.shifted(-w.a);

  std::vector<K> kc(static_cast<std::size_t>(m) + 1), k1(kc.size()), k2(kc.size());
  for (long k = 0; k <= m; ++k) {
    K mu = -(K(k) - w.p) * (K(k) - w.p + K(1));
    kc[k] = Rc.coeff(static_cast<int>(k)) / mu;
    k1[k] = R1.coeff(static_cast<int>(k)) / mu;
    k2[k] = R2.coeff(static_cast<int>(k)) / mu;
  }

  // Endpoint conditions F(+-1) = 0, F'(+-1) = -+ 2 p_c(+-1) as a 4x4 linear
  // system in (A1, A2, c_{p-1}, c_p).
  std::array<std::array<K, 5>, 4> M;  // last column = rhs
  int row = 0;
  for (int sigma : {1, -1}) {
    K u = K(sigma) + w.a;
    K fc(0), f1(0), f2(0), dc(0), d1(0), d2(0);
    for (long k = 0; k <= m; ++k) {
      K uk = pow_int(u, k);
      fc += kc[k] * uk;
      f1 += k1[k] * uk;
      f2 += k2[k] * uk;
      if (k >= 1) {
        K ukm = pow_int(u, k - 1);
        dc += K(k) * kc[k] * ukm;
        d1 += K(k) * k1[k] * ukm;
        d2 += K(k) * k2[k] * ukm;
      }
    }
    // F(sigma) = 0
    M[row][0] = f1;
    M[row][1] = f2;
    M[row][2] = pow_int(u, p - 1);
    M[row][3] = pow_int(u, p);
    M[row][4] = -fc;
    ++row;
    // F'(sigma) = -sigma * 2 p_c(sigma)
    M[row][0] = d1;
    M[row][1] = d2;
    M[row][2] = (w.p - K(1)) * pow_int(u, p - 2);
    M[row][3] = w.p * pow_int(u, p - 1);
    M[row][4] = K(-2 * sigma) * pc.eval(K(sigma)) - dc;
    ++row;
  }

  // Gaussian elimination with partial pivoting.
  std::array<K, 4> sol;
  {
    auto A = M;
    for (int col = 0; col < 4; ++col) {
      int piv = -1;
      K best(0);
      for (int r = col; r < 4; ++r) {
        K mag = abs_val(A[r][col]);
        if (piv < 0 || mag > best) {
          piv = r;
          best = mag;
        }
      }
      if (scalar_traits<K>::is_zero(A[piv][col]))
        throw MathInconsistency("ansatz builder: singular endpoint system");
      std::swap(A[piv], A[col]);
      for (int r = col + 1; r < 4; ++r) {
        K f = A[r][col] / A[col][col];
        for (int cc = col; cc < 5; ++cc) A[r][cc] -= f * A[col][cc];
      }
    }
    for (int r = 3; r >= 0; --r) {
      K acc = A[r][4];
      for (int cc = r + 1; cc < 4; ++cc) acc -= A[r][cc] * sol[cc];
      sol[r] = acc / A[r][r];
    }
  }

  ExtremalConstants<K> ab{sol[0], sol[1]};
  Profile<K> prof(setup, w, ab, ProfileKind::ExactAnsatz);
  prof.poly_coeffs_.resize(static_cast<std::size_t>(m) + 1);
  for (long k = 0; k <= m; ++k)
    prof.poly_coeffs_[k] = kc[k] + ab.A1 * k1[k] + ab.A2 * k2[k];
  prof.c_pm1_ = sol[2];
  prof.c_p_ = sol[3];
  return prof;
}

// ---------------------------------------------------------------------------
// Integral builder (float, any real p): G(z) = c0 (z+1) + int_{-1}^z Q(t)(z-t) dt
// with c0 = 2 p_c(-1)/(a-1)^{p-1}, cached on a Chebyshev-Lobatto grid.
// The right endpoint conditions are the compatibility identities and are
// asserted post hoc.
// ---------------------------------------------------------------------------
inline Profile<double> build_profile_integral(const AdmissibleSetup<double>& setup,
                                              const WeightParams<double>& w, int grid_n = 512,
                                              double compat_tol = 1e-7) {
  auto ab = solve_extremal_constants(setup, w);
  Poly<double> pc = momentum_polynomial(setup);
  Profile<double> prof(setup, w, ab, ProfileKind::Numeric);
  prof.ad_ = w.a;
  prof.pd_ = w.p;
  prof.q_ = std::make_shared<QEvaluator<double>>(setup, w, ab);
  const auto& Q = *prof.q_;

  const int N = grid_n;
  std::vector<double> x(static_cast<std::size_t>(N) + 1);
  for (int j = 0; j <= N; ++j) x[j] = -std::cos(M_PI * j / N);
  x.front() = -1.0;
  x.back() = 1.0;

  const double c0 = 2.0 * pc.eval(-1.0) / std::pow(w.a - 1.0, w.p - 1.0);
  std::vector<double> V(x.size(), 0.0), W(x.size(), 0.0);
  QuadratureOptions opt;
  for (std::size_t j = 1; j < x.size(); ++j) {
    double zl = x[j - 1], zr = x[j];
    // W' = V, W'' = Q: advance both accumulators over one panel.
    W[j] = W[j - 1] + (zr - zl) * V[j - 1] +
           integrate([&](double t) { return Q.eval(t) * (zr - t); }, zl, zr, opt);
    V[j] = V[j - 1] + integrate([&](double t) { return Q.eval(t); }, zl, zr, opt);
  }

  prof.gcache_.x = x;
  prof.g1cache_.x = x;
  prof.gcache_.fx.resize(x.size());
  prof.g1cache_.fx.resize(x.size());
  double fmax = 1.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    prof.gcache_.fx[j] = c0 * (x[j] + 1.0) + W[j];
    prof.g1cache_.fx[j] = c0 + V[j];
    fmax = std::max(fmax, std::fabs(std::pow(x[j] + w.a, w.p - 1.0) * prof.gcache_.fx[j]));
  }
  prof.scale_ = fmax;

  // Compatibility residuals at z = +1 (the -1 end holds by construction).
  double f_at_1 = std::pow(1.0 + w.a, w.p - 1.0) * prof.gcache_.fx.back();
  double fp_at_1 = (w.p - 1.0) * std::pow(1.0 + w.a, w.p - 2.0) * prof.gcache_.fx.back() +
                   std::pow(1.0 + w.a, w.p - 1.0) * prof.g1cache_.fx.back();
  if (std::fabs(f_at_1) > compat_tol * fmax || std::fabs(fp_at_1 + 2.0 * pc.eval(1.0)) > compat_tol * fmax)
    throw MathInconsistency("integral builder: endpoint compatibility residual above tolerance");
  return prof;
}

// ---------------------------------------------------------------------------
// Positivity of F on (-1, 1).
// ---------------------------------------------------------------------------
enum class PositivityStatus { Positive, NonnegativeWithInteriorZero, NegativeSomewhere, Inconclusive };

template <ScalarMode K>
struct InteriorZero {
  K location;
  int multiplicity = 0;      // 0 when unknown (numeric path)
  int rational_status = -1;  // 1 rational root, 0 no small-denominator rational, -1 unknown
};

template <ScalarMode K>
struct PositivityVerdict {
  PositivityStatus status;
  std::optional<K> witness_z;
  std::optional<K> witness_value;
  std::vector<InteriorZero<K>> zeros;
};

inline const char* to_string(PositivityStatus s) {
  switch (s) {
    case PositivityStatus::Positive: return "positive";
    case PositivityStatus::NonnegativeWithInteriorZero: return "nonnegative-with-interior-zero";
    case PositivityStatus::NegativeSomewhere: return "negative-somewhere";
    default: return "inconclusive";
  }
}

// Exact decision by root isolation on the sign polynomial stripped of its
// endpoint factors.
inline PositivityVerdict<Rational> positivity_exact(const Profile<Rational>& prof) {
  RPoly S = prof.sign_polynomial();
  if (S.is_zero()) throw MathInconsistency("positivity: identically zero profile");
  RPoly one_plus = RPoly::linear(Rational(1), Rational(1));
  RPoly one_minus = RPoly::linear(Rational(1), Rational(-1));
  while (!S.is_zero() && S.eval(Rational(-1)).is_zero()) S = S.exact_div(one_plus);
  while (!S.is_zero() && S.eval(Rational(1)).is_zero()) S = S.exact_div(one_minus);

  PositivityVerdict<Rational> out;
  auto roots = isolate_roots(S, Rational(-1), Rational(1));
  // Drop the right endpoint if isolation caught z = 1 exactly (S(1) != 0, so
  // it cannot, but the interval convention is (lo, hi]).
  if (roots.empty()) {
    Rational v = S.eval(Rational(0));
    if (v.sign() > 0) {
      out.status = PositivityStatus::Positive;
    } else {
      out.status = PositivityStatus::NegativeSomewhere;
      out.witness_z = Rational(0);
      out.witness_value = prof.value(Rational(0));
    }
    return out;
  }

  const Rational width(1, 1 << 24);
  for (auto& r : roots) r = refine_root(r, width);
  // Make sure interval bounds sit strictly inside (-1, 1).
  for (auto& r : roots)
    while (!r.exact() && (r.lo <= Rational(-1) || r.hi >= Rational(1))) detail::shrink_once(r);

  // Sample between consecutive roots (and against both endpoints).
  std::vector<Rational> samples;
  samples.push_back((Rational(-1) + roots.front().lo) / Rational(2));
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    samples.push_back((roots[i].hi + roots[i + 1].lo) / Rational(2));
  samples.push_back((roots.back().hi + Rational(1)) / Rational(2));

  for (const auto& s : samples) {
    if (S.eval(s).sign() < 0) {
      out.status = PositivityStatus::NegativeSomewhere;
      out.witness_z = s;
      out.witness_value = prof.value(s);
      for (const auto& r : roots) out.zeros.push_back({r.mid(), r.multiplicity, -1});
      return out;
    }
  }

  out.status = PositivityStatus::NonnegativeWithInteriorZero;
  for (const auto& r : roots) {
    InteriorZero<Rational> z{r.mid(), r.multiplicity, -1};
    auto rat = rational_root_in(r, 4096);
    z.rational_status = rat.has_value() ? 1 : 0;
    if (rat) z.location = *rat;
    out.zeros.push_back(z);
  }
  out.witness_z = out.zeros.front().location;
  out.witness_value = prof.value(*out.witness_z);
  return out;
}

// Numeric decision: Chebyshev scan, golden-section refinement of interior
// minima, explicit inconclusive band at 1e-10 * max. Scans the ratio
// F / ((1+z)^{d0+1} (1-z)^{dinf+1}), which shares the sign of F on (-1,1)
// but has nonzero endpoint limits, so the structural endpoint zeros of F do
// not drown genuine interior minima.
template <ScalarMode K>
PositivityVerdict<double> positivity_numeric(const Profile<K>& prof, int grid = 2048) {
  const double e0 = prof.setup().d0() + 1.0;
  const double ei = prof.setup().dinf() + 1.0;
  auto F = [&](double z) {
    return scalar_traits<K>::to_double(prof.value(K(z))) /
           (std::pow(1.0 + z, e0) * std::pow(1.0 - z, ei));
  };
  std::vector<double> zs(static_cast<std::size_t>(grid)), fs(zs.size());
  for (int i = 0; i < grid; ++i) {
    zs[i] = -std::cos(M_PI * (2.0 * i + 1.0) / (2.0 * grid));
    fs[i] = F(zs[i]);
  }
  double fmax = 0.0;
  for (double v : fs) fmax = std::max(fmax, std::fabs(v));
  if (fmax == 0.0) fmax = 1.0;

  double best_z = zs[0], best_f = fs[0];
  auto consider = [&](double z, double f) {
    if (f < best_f) {
      best_f = f;
      best_z = z;
    }
  };
  for (int i = 0; i < grid; ++i) consider(zs[i], fs[i]);
  for (int i = 1; i + 1 < grid; ++i) {
    if (fs[i] <= fs[i - 1] && fs[i] <= fs[i + 1]) {
      double z = golden_section_min(F, zs[i - 1], zs[i + 1], 1e-12);
      consider(z, F(z));
    }
  }
  // Ends of the scan range.
  double z0 = golden_section_min(F, -1.0, zs[1], 1e-12);
  consider(z0, F(z0));
  double z1 = golden_section_min(F, zs[grid - 2], 1.0, 1e-12);
  consider(z1, F(z1));

  PositivityVerdict<double> out;
  const double thr = 1e-10 * fmax;
  const double witness_f = scalar_traits<K>::to_double(prof.value(K(best_z)));
  if (best_f < -thr) {
    out.status = PositivityStatus::NegativeSomewhere;
    out.witness_z = best_z;
    out.witness_value = witness_f;
  } else if (best_f <= thr) {
    out.status = PositivityStatus::Inconclusive;
    out.witness_z = best_z;
    out.witness_value = witness_f;
    out.zeros.push_back({best_z, 0, -1});
  } else {
    out.status = PositivityStatus::Positive;
  }
  return out;
}

template <ScalarMode K>
PositivityVerdict<K> positivity(const Profile<K>& prof) {
  if constexpr (scalar_traits<K>::is_exact) {
    return positivity_exact(prof);
  } else {
    return positivity_numeric(prof);
  }
}

// ---------------------------------------------------------------------------
// Weighted scalar curvature of an arbitrary polynomial profile F:
// [-s^2 F'' + 2(p-1) s F' - p(p-1) F + 2 s^2 cd(z)] / p_c(z),  s = z+a.
// At endpoint zeros of p_c the quotient is taken by exact polynomial division
// (the remainder must vanish for admissible profiles).
// ---------------------------------------------------------------------------
template <ScalarMode K>
K scal_fp_of_poly(const AdmissibleSetup<K>& setup, const K& a, const K& p, const Poly<K>& F, const K& z) {
  Poly<K> pc = momentum_polynomial(setup);
  Poly<K> s = Poly<K>::linear(a, K(1));
  Poly<K> N = -(s * s * F.derivative().derivative()) + K(2) * (p - K(1)) * (s * F.derivative()) -
              p * (p - K(1)) * F + K(2) * (s * s * curvature_density(setup));
  K pz = pc.eval(z);
  if (!scalar_traits<K>::is_zero(pz)) return N.eval(z) / pz;
  if constexpr (scalar_traits<K>::is_exact) {
    auto [q, r] = N.divide(pc);
    if (!r.is_zero()) throw std::domain_error("scal_fp_of_poly: nonremovable zero of p_c");
    return q.eval(z);
  } else {
    // Endpoint zero of p_c: extrapolate the smooth quotient from inside.
    double sgn = z > 0 ? 1.0 : -1.0;
    constexpr int rows = 7;
    std::array<double, rows> h{}, t{};
    for (int i = 0; i < rows; ++i) {
      h[i] = std::ldexp(1.0, -(6 + i));
      double zz = sgn * (1.0 - h[i]);
      t[i] = N.eval(zz) / pc.eval(zz);
    }
    for (int j = 1; j < rows; ++j)
      for (int i = rows - 1; i >= j; --i) t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - j] - h[i]);
    return t[rows - 1];
  }
}

// Weighted scalar curvature of a built profile; equals A1 z + A2 for solver
// output. `accuracy` (optional) reports the extrapolation error estimate when
// the numeric path has to work at an endpoint zero of p_c.
template <ScalarMode K>
K weighted_scalar_curvature(const Profile<K>& prof, const K& z, double* accuracy = nullptr) {
  const auto& w = prof.weight();
  Poly<K> pc = momentum_polynomial(prof.setup());
  K pz = pc.eval(z);
  auto direct = [&](const K& zz) {
    K s = zz + w.a;
    K num = -s * s * prof.second(zz) + K(2) * (w.p - K(1)) * s * prof.deriv(zz) -
            w.p * (w.p - K(1)) * prof.value(zz) + K(2) * s * s * curvature_density(prof.setup()).eval(zz);
    return num / pc.eval(zz);
  };
  if (!scalar_traits<K>::is_zero(pz)) {
    if (accuracy) *accuracy = 0;
    return direct(z);
  }
  if constexpr (scalar_traits<K>::is_exact) {
    // Exact cancellation through the sign polynomial: S = F (z+a)^{j} with
    // j = max(0, 1-p), so the curvature numerator of S equals the one of F
    // times (z+a)^{j} plus cross terms; simplest is to go through the basis
    // representation, which is what sign_polynomial already gives for
    // polynomial F (p >= m+2).
    long pi = w.p_int();
    if (pi >= 2) {
      if (accuracy) *accuracy = 0;
      return scal_fp_of_poly(prof.setup(), w.a, w.p, prof.as_polynomial(), z);
    }
    // p <= -1: Scal = [-G'' + 2 s^{1-p} cd] / (s^{-(p+1)} p_c) with G = sign poly.
    Poly<K> G = prof.sign_polynomial();
    Poly<K> s = Poly<K>::linear(w.a, K(1));
    Poly<K> num = -G.derivative().derivative() + K(2) * (s.pow(static_cast<int>(1 - pi)) * curvature_density(prof.setup()));
    Poly<K> den = s.pow(static_cast<int>(-(pi + 1))) * pc;
    Poly<K> q = num.exact_div(den);
    if (accuracy) *accuracy = 0;
    return q.eval(z);
  } else {
    // Richardson extrapolation from z = +-(1 - 2^{-k}).
    double sign = scalar_traits<K>::to_double(z) > 0 ? 1.0 : -1.0;
    constexpr int k0 = 6, rows = 7;
    std::array<double, rows> h{}, val{};
    for (int i = 0; i < rows; ++i) {
      h[i] = std::ldexp(1.0, -(k0 + i));
      val[i] = scalar_traits<K>::to_double(direct(K(sign * (1.0 - h[i]))));
    }
    // Neville table in h.
    std::array<double, rows> t = val;
    double prev = t[rows - 1];
    for (int j = 1; j < rows; ++j) {
      for (int i = rows - 1; i >= j; --i)
        t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - j] - h[i]);
      prev = t[rows - 1];
    }
    if (accuracy) *accuracy = std::fabs(prev - val[rows - 1]);
    return K(prev);
  }
}

// ---------------------------------------------------------------------------
// Theta = F / p_c with exact cancellation of endpoint factors in exact mode.
// Returns the value; theta_slope gives the derivative (used for the
// endpoint contract Theta'(+-1) = -+2).
// ---------------------------------------------------------------------------
namespace detail {

template <ScalarMode K>
std::pair<Poly<K>, Poly<K>> cancelled_theta_parts(const Profile<K>& prof) {
  // Returns (Fbar, qbar) with Theta = Fbar/qbar * (z+a)^{p-1} factor folded in
  // for the p <= -1 case via the sign polynomial:
  //   p >= m+2: F = sign_poly,    Theta = Fbar/qbar
  //   p <= -1:  G = sign_poly,    Theta = (z+a)^{p-1} Fbar/qbar * ... handled by caller
  Poly<K> S = prof.sign_polynomial();
  Poly<K> q = momentum_polynomial(prof.setup());
  Poly<K> one_plus = Poly<K>::linear(K(1), K(1));
  Poly<K> one_minus = Poly<K>::linear(K(1), K(-1));
  for (int i = 0; i < prof.setup().d0(); ++i) {
    S = S.exact_div(one_plus);
    q = q.exact_div(one_plus);
  }
  for (int i = 0; i < prof.setup().dinf(); ++i) {
    S = S.exact_div(one_minus);
    q = q.exact_div(one_minus);
  }
  return {S, q};
}

}  // namespace detail

template <ScalarMode K>
K theta(const Profile<K>& prof, const K& z) {
  Poly<K> pc = momentum_polynomial(prof.setup());
  K pz = pc.eval(z);
  if (!scalar_traits<K>::is_zero(pz)) return prof.value(z) / pz;
  if constexpr (scalar_traits<K>::is_exact) {
    auto [S, q] = detail::cancelled_theta_parts(prof);
    K base = S.eval(z) / q.eval(z);
    long pi = prof.weight().p_int();
    if (pi >= 2) return base;
    return base * pow_int(z + prof.weight().a, pi - 1);
  } else {
    // Smooth ratio; Richardson from inside.
    double sgn = scalar_traits<K>::to_double(z) > 0 ? 1.0 : -1.0;
    auto f = [&](double h) {
      double zz = sgn * (1.0 - h);
      return scalar_traits<K>::to_double(prof.value(K(zz))) / pc.eval(zz);
    };
    constexpr int rows = 7;
    std::array<double, rows> h{}, t{};
    for (int i = 0; i < rows; ++i) {
      h[i] = std::ldexp(1.0, -(6 + i));
      t[i] = f(h[i]);
    }
    for (int j = 1; j < rows; ++j)
      for (int i = rows - 1; i >= j; --i) t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - j] - h[i]);
    return K(t[rows - 1]);
  }
}

template <ScalarMode K>
K theta_slope(const Profile<K>& prof, const K& z) {
  Poly<K> pc = momentum_polynomial(prof.setup());
  K pz = pc.eval(z);
  if (!scalar_traits<K>::is_zero(pz)) {
    K f = prof.value(z), f1 = prof.deriv(z);
    return (f1 * pz - f * pc.derivative().eval(z)) / (pz * pz);
  }
  if constexpr (scalar_traits<K>::is_exact) {
    auto [S, q] = detail::cancelled_theta_parts(prof);
    long pi = prof.weight().p_int();
    K qa = q.eval(z);
    K base = (S.derivative().eval(z) * qa - S.eval(z) * q.derivative().eval(z)) / (qa * qa);
    if (pi >= 2) return base;
    K s = z + prof.weight().a;
    // d/dz [ s^{p-1} S/q ] = (p-1) s^{p-2} S/q + s^{p-1} (S/q)'
    return K(pi - 1) * pow_int(s, pi - 2) * (S.eval(z) / qa) + pow_int(s, pi - 1) * base;
  } else {
    double sgn = scalar_traits<K>::to_double(z) > 0 ? 1.0 : -1.0;
    auto f = [&](double h) {
      double zz = sgn * (1.0 - h);
      double v = scalar_traits<K>::to_double(prof.value(K(zz))), v1 = scalar_traits<K>::to_double(prof.deriv(K(zz)));
      double pcz = pc.eval(zz);
      return (v1 * pcz - v * pc.derivative().eval(zz)) / (pcz * pcz);
    };
    constexpr int rows = 7;
    std::array<double, rows> h{}, t{};
    for (int i = 0; i < rows; ++i) {
      h[i] = std::ldexp(1.0, -(6 + i));
      t[i] = f(h[i]);
    }
    for (int j = 1; j < rows; ++j)
      for (int i = rows - 1; i >= j; --i) t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - j] - h[i]);
    return K(t[rows - 1]);
  }
}

}  // namespace admwex

#endif  // ADMWEX_PROFILE_HPP
