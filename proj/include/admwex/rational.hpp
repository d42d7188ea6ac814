#ifndef ADMWEX_RATIONAL_HPP
#define ADMWEX_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace admwex {

// Arbitrary-precision rational, canonical (reduced, positive denominator).
// Thin value wrapper around GMP's mpq_class so the rest of the library can
// treat exact scalars and doubles through one interface.
class Rational {
 public:
  Rational() : q_(0) {}
  Rational(long n) : q_(static_cast<signed long>(n)) {}          // NOLINT
  Rational(int n) : q_(n) {}                                     // NOLINT
  Rational(long n, long d) : q_(static_cast<signed long>(n), static_cast<signed long>(d)) {
    if (d == 0) throw std::invalid_argument("Rational: zero denominator");
    q_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  explicit Rational(const mpz_class& n) : q_(n) {}

  // Accepts "n", "n/d", and plain decimal strings like "-0.25".
  static Rational parse(const std::string& s) {
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class den(1);
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      Rational r;
      r.q_ = mpq_class(num, den);
      r.q_.canonicalize();
      return r;
    }
    Rational r;
    if (r.q_.set_str(s, 10) != 0)
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (r.q_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    r.q_.canonicalize();
    return r;
  }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  double to_double() const { return q_.get_d(); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  // Valid only when is_integer() and the value fits a long.
  long to_long() const {
    if (!is_integer()) throw std::domain_error("Rational: not an integer");
    if (!q_.get_num().fits_slong_p()) throw std::domain_error("Rational: integer overflow");
    return q_.get_num().get_si();
  }

  Rational operator-() const { Rational r; r.q_ = -q_; return r; }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow_int(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base.is_zero()) {
    if (e < 0) throw std::domain_error("Rational: 0 to negative power");
    return Rational(0);
  }
  mpz_class n, d;
  unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), ae);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), ae);
  mpq_class q = (e < 0) ? mpq_class(d, n) : mpq_class(n, d);
  q.canonicalize();
  return Rational(q);
}

// Exact square root when the value is a square of a rational; returns false otherwise.
inline bool sqrt_exact(const Rational& r, Rational& out) {
  if (r.sign() < 0) return false;
  mpz_class n = r.num(), d = r.den();
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (mpz_perfect_square_p(d.get_mpz_t()) == 0) return false;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  mpq_class q(sn, sd);
  q.canonicalize();
  out = Rational(q);
  return true;
}

// Largest integer <= r.
inline mpz_class floor_int(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

inline mpz_class ceil_int(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.num().get_mpz_t(), r.den().get_mpz_t());
  return q;
}

}  // namespace admwex

#endif  // ADMWEX_RATIONAL_HPP
