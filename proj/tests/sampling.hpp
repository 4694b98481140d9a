#pragma once
// Exact pointwise sampling of polynomials over Q or Q(sqrt3) at the grid
// i/n, using integer Horner steps (no gcd work per operation).

#include <hmpoles/bound_cert.hpp>
#include <hmpoles/polynomial.hpp>
#include <hmpoles/rational.hpp>

#include <vector>

namespace hm::testing {

class GridSampler {
 public:
  GridSampler(const RatPoly& p, long n) : n_(n) { init(p.coeffs(), {}); }
  GridSampler(const Polynomial<QSqrt3>& p, long n) : n_(n) {
    std::vector<Rational> a, b;
    for (const auto& c : p.coeffs()) {
      a.push_back(c.a);
      b.push_back(c.b);
    }
    init(a, b);
  }

  /// Exact sign of p(i/n) - bound.
  int sign_minus(long i, const Rational& bound) const {
    Integer sa = horner(a_, i), sb = horner(b_, i);
    // p(i/n) = (sa + sb sqrt3) / (den n^d)
    Integer x = sa * bound.get_den() - bound.get_num() * den_pow_;
    Integer y = sb * bound.get_den();
    return surd_sign(x, y);
  }

  long grid() const { return n_; }

 private:
  void init(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    Integer den = 1;
    for (const auto* v : {&a, &b})
      for (const auto& c : *v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
    deg_ = static_cast<int>(std::max(a.size(), b.size())) - 1;
    auto scale = [&](const std::vector<Rational>& v) {
      std::vector<Integer> out(static_cast<std::size_t>(deg_ + 1), Integer(0));
      for (std::size_t k = 0; k < v.size(); ++k) out[k] = v[k].get_num() * (den / v[k].get_den());
      return out;
    };
    a_ = scale(a);
    b_ = scale(b);
    npow_.assign(static_cast<std::size_t>(deg_ + 2), Integer(1));
    for (std::size_t k = 1; k < npow_.size(); ++k) npow_[k] = npow_[k - 1] * n_;
    den_pow_ = den * npow_[static_cast<std::size_t>(std::max(deg_, 0))];
  }

  Integer horner(const std::vector<Integer>& c, long i) const {
    if (deg_ < 0) return Integer(0);
    Integer acc = c[static_cast<std::size_t>(deg_)];
    for (int k = deg_ - 1; k >= 0; --k) acc = acc * i + c[static_cast<std::size_t>(k)] * npow_[static_cast<std::size_t>(deg_ - k)];
    return acc;
  }

  static int surd_sign(const Integer& x, const Integer& y) {
    int sx = sgn(x), sy = sgn(y);
    if (sy == 0) return sx;
    if (sx == 0) return sy;
    if (sx == sy) return sx;
    int c = cmp(Integer(x * x), Integer(3 * y * y));
    return c == 0 ? 0 : (c > 0 ? sx : sy);
  }

  long n_;
  int deg_ = -1;
  std::vector<Integer> a_, b_, npow_;
  Integer den_pow_;
};

/// Number of the n + 1 equispaced points of [a, b] where p breaks the global
/// bound of certificate c (|p| <= bound, or p >= bound for sign certificates).
template <class T>
long count_violations(const Polynomial<T>& p, const Rational& a, const Rational& b, const cert::BoundCertificate& c,
                      long n = 10000) {
  const Polynomial<T> q = p.taylor_shift(T(a)).scale_arg(T(Rational(b - a)));
  const GridSampler up(q, n);
  long bad = 0;
  if (c.kind == cert::Kind::AbsBelow) {
    const GridSampler down(-q, n);
    for (long i = 0; i <= n; ++i) bad += up.sign_minus(i, c.global_bound) > 0 || down.sign_minus(i, c.global_bound) > 0;
  } else {
    for (long i = 0; i <= n; ++i) bad += up.sign_minus(i, c.global_bound) < 0;
  }
  return bad;
}

}  // namespace hm::testing
