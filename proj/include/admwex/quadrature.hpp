#ifndef ADMWEX_QUADRATURE_HPP
#define ADMWEX_QUADRATURE_HPP

#include <cmath>
#include <functional>
#include <stdexcept>

namespace admwex {

namespace detail {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK values).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
};

template <class F>
PanelEstimate gk15(const F& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double fk = 0.0, fg = 0.0;
  for (int i = 0; i < 8; ++i) {
    double v;
    if (i == 7) {
      v = f(c);
    } else {
      v = f(c - h * kGK15Nodes[i]) + f(c + h * kGK15Nodes[i]);
    }
    fk += kKronrodW[i] * v;
    if (i % 2 == 1) fg += kGaussW[i / 2] * v;
  }
  return {fk * h, std::fabs((fk - fg) * h)};
}

}  // namespace detail

struct QuadratureOptions {
  double rel_tol = 1e-12;
  double abs_floor = 1e-14;
  int max_depth = 48;
};

// Adaptive Gauss-Kronrod integration of f over [lo, hi].
template <class F>
double integrate(const F& f, double lo, double hi, QuadratureOptions opt = {}) {
  if (lo == hi) return 0.0;
  struct Rec {
    const F& f;
    const QuadratureOptions& opt;
    double total_scale;
    double run(double a, double b, const detail::PanelEstimate& est, int depth) const {
      double tol = std::max(opt.abs_floor, opt.rel_tol * std::max(total_scale, std::fabs(est.value)));
      if (est.error <= tol || depth >= opt.max_depth) return est.value;
      double m = 0.5 * (a + b);
      auto left = detail::gk15(f, a, m);
      auto right = detail::gk15(f, m, b);
      return run(a, m, left, depth + 1) + run(m, b, right, depth + 1);
    }
  };
  auto first = detail::gk15(f, lo, hi);
  Rec rec{f, opt, std::fabs(first.value)};
  // One refinement pass to stabilize the global scale estimate.
  double m = 0.5 * (lo + hi);
  auto l = detail::gk15(f, lo, m);
  auto r = detail::gk15(f, m, hi);
  rec.total_scale = std::max(rec.total_scale, std::fabs(l.value) + std::fabs(r.value));
  return rec.run(lo, m, l, 1) + rec.run(m, hi, r, 1);
}

// Derivative-free 1D minimizer: golden-section on [lo, hi] to width `width`.
template <class F>
double golden_section_min(const F& f, double lo, double hi, double width) {
  constexpr double invphi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > width) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  return 0.5 * (a + b);
}

// Bisection for a bracketed sign change, to absolute width `width`.
template <class F>
double bisect(const F& f, double lo, double hi, double width) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0) == (fhi < 0)) throw std::invalid_argument("bisect: endpoints do not bracket a root");
  while (hi - lo > width) {
    double m = 0.5 * (lo + hi);
    double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm < 0) == (flo < 0)) {
      lo = m;
      flo = fm;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace admwex

#endif  // ADMWEX_QUADRATURE_HPP
