#ifndef ADMWEX_POLY_HPP
#define ADMWEX_POLY_HPP

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "admwex/scalar.hpp"

namespace admwex {

// Dense univariate polynomial, coefficients ascending by degree.
// Canonical form: no trailing zero coefficients; deg(0) == -1.
template <ScalarMode K>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }
  Poly(std::initializer_list<K> coeffs) : c_(coeffs) { normalize(); }

  static Poly zero() { return Poly(); }
  static Poly constant(const K& v) { return Poly(std::vector<K>{v}); }
  static Poly identity() { return Poly(std::vector<K>{K(0), K(1)}); }  // z
  // c0 + c1 z
  static Poly linear(const K& c0, const K& c1) { return Poly(std::vector<K>{c0, c1}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<K>& coeffs() const { return c_; }
  K coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return K(0);
    return c_[static_cast<std::size_t>(i)];
  }
  K lead() const {
    if (c_.empty()) return K(0);
    return c_.back();
  }

  K eval(const K& z) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
  }

  // Value plus first and second derivative in one pass.
  void eval_jet(const K& z, K& f, K& f1, K& f2) const {
    f = K(0);
    f1 = K(0);
    f2 = K(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      f2 = f2 * z + f1;
      f1 = f1 * z + f;
      f = f * z + *it;
    }
    f2 = f2 * K(2);
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(static_cast<long>(i));
    return Poly(std::move(d));
  }

  // Antiderivative with zero constant term.
  Poly antiderivative() const {
    if (c_.empty()) return Poly();
    std::vector<K> d(c_.size() + 1, K(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
      d[i + 1] = c_[i] / K(static_cast<long>(i + 1));
    return Poly(std::move(d));
  }

  Poly operator-() const {
    std::vector<K> d(c_);
    for (auto& v : d) v = -v;
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<K> d(std::max(a.c_.size(), b.c_.size()), K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) d[i] = a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) d[i] += b.c_[i];
    return Poly(std::move(d));
  }
  friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<K> d(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
    return Poly(std::move(d));
  }

  friend Poly operator*(const Poly& a, const K& s) {
    std::vector<K> d(a.c_);
    for (auto& v : d) v = v * s;
    return Poly(std::move(d));
  }
  friend Poly operator*(const K& s, const Poly& a) { return a * s; }
  friend Poly operator/(const Poly& a, const K& s) {
    std::vector<K> d(a.c_);
    for (auto& v : d) v = v / s;
    return Poly(std::move(d));
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  Poly pow(int e) const {
    if (e < 0) throw std::invalid_argument("Poly::pow: negative exponent");
    Poly acc = constant(K(1));
    Poly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  // p(z + t): change of variable (Taylor shift).
  Poly shifted(const K& t) const {
    Poly acc;
    Poly lin = linear(t, K(1));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(*it);
    return acc;
  }

  // Euclidean division: *this = q*b + r with deg r < deg b.
  std::pair<Poly, Poly> divide(const Poly& b) const {
    if (b.is_zero()) throw std::domain_error("Poly::divide: division by zero polynomial");
    Poly r = *this;
    std::vector<K> q;
    int db = b.degree();
    if (r.degree() >= db) q.assign(static_cast<std::size_t>(r.degree() - db) + 1, K(0));
    while (!r.is_zero() && r.degree() >= db) {
      int k = r.degree() - db;
      K f = r.lead() / b.lead();
      q[static_cast<std::size_t>(k)] = f;
      std::vector<K> rc = r.c_;
      for (int i = 0; i <= db; ++i)
        rc[static_cast<std::size_t>(i + k)] -= f * b.coeff(i);
      rc.pop_back();  // leading term cancels by construction
      r = Poly(std::move(rc));
    }
    return {Poly(std::move(q)), r};
  }

  // Division that must be exact; throws if a remainder is left (exact mode).
  Poly exact_div(const Poly& b) const {
    auto [q, r] = divide(b);
    if constexpr (scalar_traits<K>::is_exact) {
      if (!r.is_zero()) throw std::domain_error("Poly::exact_div: nonzero remainder");
    }
    return q;
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (scalar_traits<K>::is_zero(c_[i])) continue;
      if (!out.empty()) out += " + ";
      out += scalar_traits<K>::str(c_[i]);
      if (i >= 1) out += "*" + var + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out;
  }

 private:
  void normalize() {
    while (!c_.empty() && scalar_traits<K>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

// --- exact-mode helpers (gcd machinery used by root isolation) ---

using RPoly = Poly<Rational>;

inline Rational poly_content(const Poly<Rational>& p) {
  if (p.is_zero()) return Rational(0);
  mpz_class num_gcd(0), den_lcm(1);
  for (const auto& c : p.coeffs()) {
    if (c.is_zero()) continue;
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.num().get_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.den().get_mpz_t());
  }
  mpq_class q(num_gcd, den_lcm);
  q.canonicalize();
  return Rational(q);
}

// Content-1 polynomial with positive leading coefficient.
inline Poly<Rational> primitive_part(const Poly<Rational>& p) {
  if (p.is_zero()) return p;
  Rational c = poly_content(p);
  if (p.lead().sign() < 0) c = -c;
  return p / c;
}

inline Poly<Rational> poly_gcd(Poly<Rational> a, Poly<Rational> b) {
  a = primitive_part(a);
  b = primitive_part(b);
  while (!b.is_zero()) {
    auto r = a.divide(b).second;
    a = std::move(b);
    b = primitive_part(r);
  }
  return a;
}

}  // namespace admwex

#endif  // ADMWEX_POLY_HPP
