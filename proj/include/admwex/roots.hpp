#ifndef ADMWEX_ROOTS_HPP
#define ADMWEX_ROOTS_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "admwex/poly.hpp"

namespace admwex {

// Exact real-root machinery for Poly<Rational>: Sturm chains, square-free
// decomposition (Yun), isolation by bisection.

struct IsolatedRoot {
  Rational lo;  // open below
  Rational hi;  // closed above; lo == hi means the root is known exactly
  int multiplicity = 1;
  RPoly factor;  // square-free factor vanishing at the root
  bool exact() const { return lo == hi; }
  Rational mid() const { return (lo + hi) / Rational(2); }
};

namespace detail {

// Scale to content 1 without touching the sign (Sturm sequences only admit
// positive rescaling).
inline RPoly positive_primitive(const RPoly& p) {
  if (p.is_zero()) return p;
  return p / poly_content(p);
}

}  // namespace detail

inline std::vector<RPoly> sturm_chain(const RPoly& p) {
  std::vector<RPoly> chain;
  chain.push_back(detail::positive_primitive(p));
  if (p.degree() <= 0) return chain;
  chain.push_back(detail::positive_primitive(p.derivative()));
  while (chain.back().degree() > 0) {
    const RPoly& a = chain[chain.size() - 2];
    const RPoly& b = chain.back();
    RPoly r = a.divide(b).second;
    if (r.is_zero()) break;
    chain.push_back(detail::positive_primitive(-r));
  }
  return chain;
}

inline int sign_variations(const std::vector<RPoly>& chain, const Rational& x) {
  int prev = 0, var = 0;
  for (const auto& q : chain) {
    int s = q.eval(x).sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++var;
    prev = s;
  }
  return var;
}

// Number of distinct real roots of the chain's polynomial in (lo, hi].
inline int count_roots(const std::vector<RPoly>& chain, const Rational& lo, const Rational& hi) {
  return sign_variations(chain, lo) - sign_variations(chain, hi);
}

// All real roots lie in (-B, B).
inline Rational cauchy_root_bound(const RPoly& p) {
  if (p.degree() < 0) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) {
    Rational r = abs(p.coeff(i));
    if (r > m) m = r;
  }
  return Rational(1) + m / abs(p.lead());
}

// Yun square-free decomposition: p = c * prod f_i^i with the f_i square-free
// and pairwise coprime. Returns the nonconstant (f_i, i).
inline std::vector<std::pair<RPoly, int>> square_free_decomposition(const RPoly& p) {
  std::vector<std::pair<RPoly, int>> out;
  if (p.degree() <= 0) return out;
  RPoly f = primitive_part(p);
  RPoly fp = f.derivative();
  RPoly a = poly_gcd(f, fp);
  RPoly b = f.exact_div(a);
  RPoly c = fp.exact_div(a);
  RPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    RPoly g = poly_gcd(b, d);
    if (g.degree() > 0) out.emplace_back(primitive_part(g), i);
    b = b.exact_div(g);
    c = d.exact_div(g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace detail {

inline void isolate_square_free(const RPoly& f, const std::vector<RPoly>& chain,
                                const Rational& lo, const Rational& hi, int mult,
                                std::vector<IsolatedRoot>& out) {
  int n = count_roots(chain, lo, hi);
  if (n == 0) return;
  if (n == 1) {
    if (f.eval(hi).is_zero()) {
      out.push_back({hi, hi, mult, f});
    } else {
      out.push_back({lo, hi, mult, f});
    }
    return;
  }
  Rational mid = (lo + hi) / Rational(2);
  isolate_square_free(f, chain, lo, mid, mult, out);
  isolate_square_free(f, chain, mid, hi, mult, out);
}

// One bisection step on an interval known to contain exactly one simple root
// of iv.factor and none at iv.hi. Handles a root sitting exactly at iv.lo.
inline void shrink_once(IsolatedRoot& iv) {
  if (iv.exact()) return;
  const RPoly& f = iv.factor;
  int shi = f.eval(iv.hi).sign();
  int slo = f.eval(iv.lo).sign();
  if (slo == 0) {
    // iv.lo is a different root of f; step inside without crossing ours.
    Rational step = (iv.hi - iv.lo) / Rational(4);
    while (true) {
      Rational probe = iv.lo + step;
      int sp = f.eval(probe).sign();
      if (sp == 0) {
        iv.lo = iv.hi = probe;
        return;
      }
      if (sp != shi) {
        iv.lo = probe;
        return;
      }
      iv.hi = probe;
      step = step / Rational(4);
    }
  }
  Rational mid = iv.mid();
  int sm = f.eval(mid).sign();
  if (sm == 0) {
    iv.lo = iv.hi = mid;
  } else if (sm == shi) {
    iv.hi = mid;
  } else {
    iv.lo = mid;
  }
}

}  // namespace detail

// Shrink an isolating interval below `width`.
inline IsolatedRoot refine_root(IsolatedRoot iv, const Rational& width) {
  while (!iv.exact() && iv.hi - iv.lo > width) detail::shrink_once(iv);
  return iv;
}

// Distinct real roots of p in (lo, hi], sorted ascending, each with its
// multiplicity in p and a disjoint isolating interval.
inline std::vector<IsolatedRoot> isolate_roots(const RPoly& p, const Rational& lo, const Rational& hi) {
  std::vector<IsolatedRoot> out;
  for (const auto& [f, mult] : square_free_decomposition(p)) {
    auto chain = sturm_chain(f);
    detail::isolate_square_free(f, chain, lo, hi, mult, out);
  }
  if (out.size() > 1) {
    // Roots of distinct square-free factors are distinct, so repeated
    // shrinking separates any overlapping intervals.
    bool overlap = true;
    while (overlap) {
      std::sort(out.begin(), out.end(),
                [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo + a.hi < b.lo + b.hi; });
      overlap = false;
      for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if (out[i].hi > out[i + 1].lo) {
          detail::shrink_once(out[i]);
          detail::shrink_once(out[i + 1]);
          overlap = true;
        }
      }
    }
    std::sort(out.begin(), out.end(),
              [](const IsolatedRoot& a, const IsolatedRoot& b) { return a.lo + a.hi < b.lo + b.hi; });
  }
  return out;
}

// Search the isolating interval for a rational root with denominator <= max_den.
// Exact when it returns a value; a miss only bounds the denominator.
inline std::optional<Rational> rational_root_in(const IsolatedRoot& iv, long max_den) {
  if (iv.exact()) return iv.lo;
  IsolatedRoot narrow = iv;
  for (long q = 1; q <= max_den; ++q) {
    // Keep the interval narrow enough that each denominator admits at most
    // a handful of candidates.
    while (!narrow.exact() && (narrow.hi - narrow.lo) * Rational(q) > Rational(4))
      detail::shrink_once(narrow);
    if (narrow.exact()) return narrow.lo;
    mpz_class lo_n = ceil_int(narrow.lo * Rational(q));
    mpz_class hi_n = floor_int(narrow.hi * Rational(q));
    for (mpz_class n = lo_n; n <= hi_n; ++n) {
      Rational cand{mpq_class(n, mpz_class(q))};
      if (cand <= narrow.lo || cand > narrow.hi) continue;
      if (iv.factor.eval(cand).is_zero()) return cand;
    }
  }
  return std::nullopt;
}

}  // namespace admwex

#endif  // ADMWEX_ROOTS_HPP
