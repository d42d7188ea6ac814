#ifndef ADMWEX_STABILITY_HPP
#define ADMWEX_STABILITY_HPP

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "admwex/profile.hpp"

namespace admwex {

// ---------------------------------------------------------------------------
// Donaldson-Futaki invariant of the admissible test configuration with
// parameter zeta in (-1,1): DF = 1/4 (zeta+a)^{1-p} F(zeta).
// ---------------------------------------------------------------------------
template <ScalarMode K>
K df_admissible(const Profile<K>& prof, const K& zeta) {
  const auto& w = prof.weight();
  return prof.value(zeta) * detail::spow(zeta + w.a, K(1) - w.p) / K(4);
}

// Independent assembly of the same invariant from the Hilbert-expansion
// coefficients: b0/b1 moments of the degeneration to the normal cone of the
// infinity section. Valid when A1 vanishes.
template <ScalarMode K>
K df_admissible_expansion_oracle(const AdmissibleSetup<K>& setup, const WeightParams<K>& w, const K& zeta) {
  const K qa = -(w.p + K(1));
  const K qb = K(1) - w.p;
  Poly<K> pc = momentum_polynomial(setup);
  Poly<K> cd = curvature_density(setup);

  K b0_00 = alpha(setup, w, 0, qa);          // b_0^{-(p+1),0}
  K b1_00 = beta(setup, w, 0, qb) / K(2);    // b_1^{(1-p),0}

  K b0_01, b1_01;
  Poly<K> lin_zeta = Poly<K>::linear(zeta, K(-1));  // (zeta - t)
  if constexpr (scalar_traits<K>::is_exact) {
    long qal = scalar_traits<K>::to_long(qa);
    long qbl = scalar_traits<K>::to_long(qb);
    b0_01 = integrate_shifted(lin_zeta * pc, qal, w.a, K(-1), zeta);
    b1_01 = integrate_shifted(lin_zeta * cd, qbl, w.a, K(-1), zeta) / K(2) +
            (K(1) + zeta) * pow_int(w.a - K(1), qbl) * pc.eval(K(-1)) / K(2);
  } else {
    b0_01 = integrate([&](double t) { return (zeta - t) * std::pow(t + w.a, qa) * pc.eval(t); }, -1.0, zeta);
    b1_01 = integrate([&](double t) { return (zeta - t) * std::pow(t + w.a, qb) * cd.eval(t); }, -1.0, zeta) / 2.0 +
            (1.0 + zeta) * std::pow(w.a - 1.0, qb) * pc.eval(-1.0) / 2.0;
  }
  return b1_01 - (b1_00 / b0_00) * b0_01;
}

// DF of the product configuration: a positive multiple of A1.
template <ScalarMode K>
K df_product(const AdmissibleSetup<K>& setup, const WeightParams<K>& w) {
  const K qa = -(w.p + K(1));
  K a0 = alpha(setup, w, 0, qa);
  K a1 = alpha(setup, w, 1, qa);
  K a2 = alpha(setup, w, 2, qa);
  auto ab = solve_extremal_constants(setup, w);
  return (a0 * a2 - a1 * a1) / (K(4) * a0) * ab.A1;
}

// ---------------------------------------------------------------------------
// Stability verdicts.
// ---------------------------------------------------------------------------
enum class StabilityGrade {
  AnalyticallyKStable,
  KStableOnRationals,
  KSemistable,
  Unstable,
  Inconclusive,
};

inline const char* to_string(StabilityGrade g) {
  switch (g) {
    case StabilityGrade::AnalyticallyKStable: return "analytically-K-stable";
    case StabilityGrade::KStableOnRationals: return "K-stable-on-rationals";
    case StabilityGrade::KSemistable: return "K-semistable";
    case StabilityGrade::Unstable: return "unstable";
    default: return "inconclusive";
  }
}

template <ScalarMode K>
struct StabilityReport {
  ExtremalConstants<K> constants{};
  bool futaki_vanishes = false;
  StabilityGrade verdict = StabilityGrade::Inconclusive;
  StabilityGrade relative_verdict = StabilityGrade::Inconclusive;
  PositivityVerdict<K> positivity_report{};
  std::vector<std::pair<double, double>> df_samples;  // (zeta, DF)
};

namespace detail {

template <ScalarMode K>
StabilityGrade positivity_ladder(const PositivityVerdict<K>& v) {
  switch (v.status) {
    case PositivityStatus::Positive:
      return StabilityGrade::AnalyticallyKStable;
    case PositivityStatus::NonnegativeWithInteriorZero: {
      for (const auto& z : v.zeros)
        if (z.rational_status != 0) return StabilityGrade::KSemistable;
      // No interior zero admits a small-denominator rational value: F > 0 on
      // the sampled rationals. The full rational/irrational distinction is
      // reported, not proved.
      return StabilityGrade::KStableOnRationals;
    }
    case PositivityStatus::NegativeSomewhere:
      return StabilityGrade::Unstable;
    default:
      return StabilityGrade::Inconclusive;
  }
}

}  // namespace detail

template <ScalarMode K>
StabilityReport<K> stability_verdict_of(const Profile<K>& prof, double futaki_tol = 1e-10) {
  StabilityReport<K> rep;
  rep.constants = prof.constants();
  if constexpr (scalar_traits<K>::is_exact) {
    rep.futaki_vanishes = rep.constants.A1.is_zero();
  } else {
    double scale = std::max(1.0, std::fabs(rep.constants.A2));
    rep.futaki_vanishes = std::fabs(rep.constants.A1) <= futaki_tol * scale;
  }
  rep.positivity_report = positivity(prof);
  rep.relative_verdict = detail::positivity_ladder(rep.positivity_report);
  if (rep.futaki_vanishes) {
    rep.verdict = rep.relative_verdict;
  } else {
    rep.verdict = rep.relative_verdict == StabilityGrade::Unstable ? StabilityGrade::Unstable
                                                                   : StabilityGrade::Inconclusive;
  }
  for (long zn : {-9L, -5L, 0L, 5L, 9L}) {
    K zeta = K(zn) / K(10);
    rep.df_samples.emplace_back(static_cast<double>(zn) / 10.0,
                                scalar_traits<K>::to_double(df_admissible(prof, zeta)));
  }
  return rep;
}

inline StabilityReport<Rational> stability_verdict(const AdmissibleSetup<Rational>& setup,
                                                   const WeightParams<Rational>& w) {
  return stability_verdict_of(build_profile_ansatz(setup, w));
}

inline StabilityReport<double> stability_verdict(const AdmissibleSetup<double>& setup,
                                                 const WeightParams<double>& w) {
  return stability_verdict_of(build_profile_integral(setup, w));
}

// ---------------------------------------------------------------------------
// Reduced weighted scalar curvature:
// Scal^perp = (z+a)^{p+1}/p_c * d^2/dz^2 [ (F_ext - F)/(z+a)^{p-1} ].
// ---------------------------------------------------------------------------
namespace detail {

// d^2/dz^2 [ F/(z+a)^{p-1} ] from the jets of F.
template <ScalarMode K>
K g_second_of_jets(const K& a, const K& p, const K& z, const K& f, const K& f1, const K& f2) {
  K s = z + a;
  K e = K(1) - p;
  return detail::spow(s, e) * f2 + K(2) * e * detail::spow(s, e - K(1)) * f1 +
         p * (p - K(1)) * detail::spow(s, e - K(2)) * f;
}

}  // namespace detail

template <ScalarMode K>
K reduced_scalar_curvature(const Profile<K>& extremal, const K& z, const K& f, const K& f1, const K& f2) {
  const auto& w = extremal.weight();
  Poly<K> pc = momentum_polynomial(extremal.setup());
  K pz = pc.eval(z);
  if (scalar_traits<K>::is_zero(pz))
    throw std::domain_error("reduced_scalar_curvature: p_c vanishes at the evaluation point");
  K diff = extremal.g_second(z) - detail::g_second_of_jets(w.a, w.p, z, f, f1, f2);
  return detail::spow(z + w.a, w.p + K(1)) * diff / pz;
}

template <ScalarMode K>
K reduced_scalar_curvature(const Profile<K>& extremal, const Poly<K>& F, const K& z) {
  K f, f1, f2;
  F.eval_jet(z, f, f1, f2);
  return reduced_scalar_curvature(extremal, z, f, f1, f2);
}

template <ScalarMode K>
K reduced_scalar_curvature(const Profile<K>& extremal, const Profile<K>& prof, const K& z) {
  return reduced_scalar_curvature(extremal, z, prof.value(z), prof.deriv(z), prof.second(z));
}

// ---------------------------------------------------------------------------
// Relative weighted Mabuchi energy restricted to admissible metrics,
// parametrized by Theta (u'' = p_c/F = 1/Theta):
//   M(u) = int G_ext (u'' - u_c'') dz - int p_c (z+a)^{1-p} log(u''/u_c'') dz.
// ---------------------------------------------------------------------------
struct ThetaProfileFn {
  std::function<double(double)> theta;
  std::string description;
};

struct MabuchiEvaluation {
  double value = 0;
  std::string reference;
  std::string test;
};

// Endpoint/positivity contract for a fibre profile given as Theta.
inline void validate_theta_profile(const ThetaProfileFn& t) {
  const auto& f = t.theta;
  if (std::fabs(f(1.0)) > 1e-8 || std::fabs(f(-1.0)) > 1e-8)
    throw std::invalid_argument("theta profile: endpoint values must vanish (" + t.description + ")");
  double h = 1e-6;
  double slope_m = (f(-1.0 + h) - f(-1.0)) / h;
  double slope_p = (f(1.0) - f(1.0 - h)) / h;
  if (std::fabs(slope_m - 2.0) > 1e-3 || std::fabs(slope_p + 2.0) > 1e-3)
    throw std::invalid_argument("theta profile: endpoint slopes must be -+2 (" + t.description + ")");
  for (int i = 0; i < 512; ++i) {
    double z = -std::cos(M_PI * (2.0 * i + 1.0) / 1024.0);
    if (!(f(z) > 0))
      throw std::invalid_argument("theta profile: not positive on (-1,1) (" + t.description + ")");
  }
}

inline MabuchiEvaluation mabuchi_energy(const AdmissibleSetup<double>& setup, const WeightParams<double>& w,
                                        const ThetaProfileFn& reference, const ThetaProfileFn& test,
                                        const Profile<double>* extremal = nullptr) {
  validate_theta_profile(reference);
  validate_theta_profile(test);
  Profile<double> built = extremal ? *extremal : build_profile_integral(setup, w);
  Poly<double> pc = momentum_polynomial(setup);

  auto linear_term = [&](double z) {
    return built.g_value(z) * (1.0 / test.theta(z) - 1.0 / reference.theta(z));
  };
  auto entropy_term = [&](double z) {
    return pc.eval(z) * std::pow(z + w.a, 1.0 - w.p) * std::log(reference.theta(z) / test.theta(z));
  };
  MabuchiEvaluation out;
  out.value = integrate(linear_term, -1.0, 1.0) - integrate(entropy_term, -1.0, 1.0);
  out.reference = reference.description;
  out.test = test.description;
  return out;
}

}  // namespace admwex

#endif  // ADMWEX_STABILITY_HPP
