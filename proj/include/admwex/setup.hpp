#ifndef ADMWEX_SETUP_HPP
#define ADMWEX_SETUP_HPP

#include <stdexcept>
#include <vector>

#include "admwex/poly.hpp"

namespace admwex {

// One factor of the base: bundle parameter x, complex dimension d,
// normalized scalar curvature s.
template <ScalarMode K>
struct BaseBlock {
  K x;
  int d = 1;
  K s;
};

// Combinatorial/metric data of an admissible projective bundle. The extended
// block list appends (x=1, d=d0, s=d0+1) and (x=-1, d=dinf, s=-(dinf+1))
// when the corresponding fibre ranks exceed one.
template <ScalarMode K>
class AdmissibleSetup {
 public:
  AdmissibleSetup(std::vector<BaseBlock<K>> base_blocks, int d0 = 0, int dinf = 0)
      : base_(std::move(base_blocks)), d0_(d0), dinf_(dinf) {
    if (d0_ < 0 || dinf_ < 0) throw std::invalid_argument("AdmissibleSetup: negative rank parameter");
    K one(1);
    for (const auto& b : base_) {
      if (b.d < 1) throw std::invalid_argument("AdmissibleSetup: block dimension must be >= 1");
      if (scalar_traits<K>::is_zero(b.x))
        throw std::invalid_argument("AdmissibleSetup: x_a = 0 is not admissible");
      if (!(abs_val(b.x) < one))
        throw std::invalid_argument("AdmissibleSetup: |x_a| must be < 1");
    }
    if (fibre_dim_m() < 2) throw std::invalid_argument("AdmissibleSetup: total dimension m must be >= 2");
  }

  const std::vector<BaseBlock<K>>& base_blocks() const { return base_; }
  int d0() const { return d0_; }
  int dinf() const { return dinf_; }

  std::vector<BaseBlock<K>> extended_blocks() const {
    std::vector<BaseBlock<K>> ext = base_;
    if (d0_ > 0) ext.push_back(BaseBlock<K>{K(1), d0_, K(static_cast<long>(d0_ + 1))});
    if (dinf_ > 0) ext.push_back(BaseBlock<K>{K(-1), dinf_, K(static_cast<long>(-(dinf_ + 1)))});
    return ext;
  }

  // m = 1 + sum of extended block dimensions.
  int fibre_dim_m() const {
    int m = 1 + d0_ + dinf_;
    for (const auto& b : base_) m += b.d;
    return m;
  }

 private:
  std::vector<BaseBlock<K>> base_;
  int d0_;
  int dinf_;
};

// p_c(z) = prod over extended blocks of (1 + x_a z)^{d_a}; degree m-1,
// strictly positive on (-1,1).
template <ScalarMode K>
Poly<K> momentum_polynomial(const AdmissibleSetup<K>& setup) {
  Poly<K> p = Poly<K>::constant(K(1));
  for (const auto& b : setup.extended_blocks())
    p = p * Poly<K>::linear(K(1), b.x).pow(b.d);
  return p;
}

// sum_a x_a d_a s_a p_c(z) / (1 + x_a z); each division is exact since the
// linear factor divides p_c. Degree <= m-2.
template <ScalarMode K>
Poly<K> curvature_density(const AdmissibleSetup<K>& setup) {
  Poly<K> pc = momentum_polynomial(setup);
  Poly<K> out;
  for (const auto& b : setup.extended_blocks()) {
    K coef = b.x * K(static_cast<long>(b.d)) * b.s;
    if (scalar_traits<K>::is_zero(coef)) continue;
    out = out + coef * pc.exact_div(Poly<K>::linear(K(1), b.x));
  }
  return out;
}

// Weight data (a, p) for f = z + a; a > 1 strictly.
template <ScalarMode K>
struct WeightParams {
  K a;
  K p;

  WeightParams(K a_in, K p_in) : a(std::move(a_in)), p(std::move(p_in)) {
    if (!(a > K(1))) throw std::invalid_argument("WeightParams: require a > 1");
  }

  bool p_is_integer() const { return scalar_traits<K>::is_integer(p); }
  long p_int() const { return scalar_traits<K>::to_long(p); }

  // The exact pipeline (polynomial ansatz, rational moments) needs the
  // homogeneous exponents p-1, p away from {0,...,m+1}.
  bool exact_path_applies(int m) const {
    if (!p_is_integer()) return false;
    long pi = p_int();
    return pi >= m + 2 || pi <= -1;
  }
};

}  // namespace admwex

#endif  // ADMWEX_SETUP_HPP
