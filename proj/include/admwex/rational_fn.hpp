#ifndef ADMWEX_RATIONAL_FN_HPP
#define ADMWEX_RATIONAL_FN_HPP

#include <stdexcept>
#include <string>
#include <utility>

#include "admwex/poly.hpp"

namespace admwex {

// Quotient of two polynomials. In exact mode the representation is kept
// reduced (coprime parts, positive content-1 denominator).
template <ScalarMode K>
class RationalFn {
 public:
  RationalFn() : num_(), den_(Poly<K>::constant(K(1))) {}
  explicit RationalFn(Poly<K> num) : num_(std::move(num)), den_(Poly<K>::constant(K(1))) {}
  RationalFn(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("RationalFn: zero denominator");
    reduce();
  }

  const Poly<K>& num() const { return num_; }
  const Poly<K>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  K eval(const K& x) const {
    K d = den_.eval(x);
    if (scalar_traits<K>::is_zero(d)) throw std::domain_error("RationalFn: pole at evaluation point");
    return num_.eval(x) / d;
  }

  RationalFn operator-() const { return RationalFn(-num_, den_, no_reduce_tag{}); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.num_.is_zero()) throw std::domain_error("RationalFn: division by zero");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  friend RationalFn operator*(const RationalFn& a, const K& s) {
    return RationalFn(a.num_ * s, a.den_, no_reduce_tag{});
  }

  RationalFn derivative() const {
    return RationalFn(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  std::string str(const std::string& var = "a") const {
    return "(" + num_.str(var) + ") / (" + den_.str(var) + ")";
  }

 private:
  struct no_reduce_tag {};
  RationalFn(Poly<K> num, Poly<K> den, no_reduce_tag) : num_(std::move(num)), den_(std::move(den)) {}

  void reduce() {
    if constexpr (scalar_traits<K>::is_exact) {
      if (num_.is_zero()) {
        den_ = Poly<K>::constant(K(1));
        return;
      }
      Poly<K> g = poly_gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = num_.exact_div(g);
        den_ = den_.exact_div(g);
      }
      Rational c = poly_content(den_);
      if (den_.lead().sign() < 0) c = -c;
      den_ = den_ / c;
      num_ = num_ / c;
    }
  }

  Poly<K> num_;
  Poly<K> den_;
};

}  // namespace admwex

#endif  // ADMWEX_RATIONAL_FN_HPP
