#pragma once
/**
 * @file interval.hpp
 * @brief Closed rational intervals with optional outward rounding to dyadic
 *        endpoints, plus enclosures of sqrt, pi and exp.
 */

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hm {

class RationalInterval {
 public:
  RationalInterval() = default;
  RationalInterval(long v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  RationalInterval(const Rational& v) : lo_(v), hi_(v) {}  // NOLINT(google-explicit-constructor)
  RationalInterval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (lo_ > hi_) throw std::invalid_argument("RationalInterval: lo > hi");
  }

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational mid() const { return (lo_ + hi_) / 2; }
  Rational rad() const { return (hi_ - lo_) / 2; }
  Rational width() const { return hi_ - lo_; }
  /// Upper bound of |x| over the interval.
  Rational mag() const { return std::max(hm::abs(lo_), hm::abs(hi_)); }
  /// Lower bound of |x| over the interval.
  Rational mig() const {
    if (lo_ <= 0 && hi_ >= 0) return Rational(0);
    return std::min(hm::abs(lo_), hm::abs(hi_));
  }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const RationalInterval& o) const { return lo_ <= o.lo_ && o.hi_ <= hi_; }
  bool is_point() const { return lo_ == hi_; }

  /// Widens endpoints to the grid 2^-bits (lo down, hi up).
  RationalInterval& round_out(unsigned bits) {
    Integer scale = Integer(1) << bits;
    Integer f = lo_.get_num() * scale;
    mpz_fdiv_q(f.get_mpz_t(), f.get_mpz_t(), lo_.get_den().get_mpz_t());
    Integer c = hi_.get_num() * scale;
    mpz_cdiv_q(c.get_mpz_t(), c.get_mpz_t(), hi_.get_den().get_mpz_t());
    lo_ = rat(f, scale);
    hi_ = rat(c, scale);
    return *this;
  }

  RationalInterval& operator+=(const RationalInterval& o) { lo_ += o.lo_; hi_ += o.hi_; return *this; }
  RationalInterval& operator-=(const RationalInterval& o) {
    Rational nl = lo_ - o.hi_;
    hi_ -= o.lo_;
    lo_ = std::move(nl);
    return *this;
  }
  RationalInterval& operator*=(const RationalInterval& o) {
    Rational a = lo_ * o.lo_, b = lo_ * o.hi_, c = hi_ * o.lo_, d = hi_ * o.hi_;
    lo_ = std::min({a, b, c, d});
    hi_ = std::max({a, b, c, d});
    return *this;
  }
  RationalInterval& operator/=(const RationalInterval& o) {
    if (o.lo_ <= 0 && o.hi_ >= 0) throw std::domain_error("RationalInterval: division by interval containing 0");
    return *this *= RationalInterval(Rational(1 / o.hi_), Rational(1 / o.lo_));
  }

  friend RationalInterval operator+(RationalInterval x, const RationalInterval& y) { return x += y; }
  friend RationalInterval operator-(RationalInterval x, const RationalInterval& y) { return x -= y; }
  friend RationalInterval operator*(RationalInterval x, const RationalInterval& y) { return x *= y; }
  friend RationalInterval operator/(RationalInterval x, const RationalInterval& y) { return x /= y; }
  friend RationalInterval operator-(const RationalInterval& x) { return {Rational(-x.hi_), Rational(-x.lo_)}; }

  friend RationalInterval hull(const RationalInterval& x, const RationalInterval& y) {
    return {std::min(x.lo_, y.lo_), std::max(x.hi_, y.hi_)};
  }

 private:
  Rational lo_, hi_;
};

inline RationalInterval abs(const RationalInterval& x) { return {x.mig(), x.mag()}; }

inline RationalInterval pow(const RationalInterval& x, unsigned e) {
  if (e == 0) return RationalInterval(1);
  if (e % 2 == 0 && x.lo() < 0 && x.hi() > 0) return {Rational(0), pow(x.mag(), e)};
  Rational a = pow(x.lo(), e), b = pow(x.hi(), e);
  return {std::min(a, b), std::max(a, b)};
}

inline std::string to_string(const RationalInterval& x, int digits = 30) {
  return to_decimal(x.mid(), digits) + " +/- " + to_scientific(x.rad(), 3);
}

namespace enclose {

/// Bits used when rounding intermediate enclosures outward.
inline constexpr unsigned kWorkBits = 256;

/// Enclosure of sqrt(q), q >= 0, with width at most `width` (> 0).
inline RationalInterval sqrt(const Rational& q, const Rational& width) {
  if (q < 0) throw std::domain_error("sqrt of negative rational");
  if (q == 0) return RationalInterval(0);
  if (width <= 0) throw std::invalid_argument("sqrt: width must be positive");
  // Newton from above: x -> (x + q/x)/2 stays >= sqrt(q) and q/x <= sqrt(q).
  Rational hi = Rational(std::sqrt(q.get_d()) * (1 + 1e-12) + 1e-300);
  if (hi * hi < q) hi = q > 1 ? q : Rational(1);
  unsigned bits = 64;
  for (int it = 0; it < 200; ++it) {
    Rational lo = q / hi;
    if (hi - lo <= width) {
      RationalInterval r(lo, hi);
      return r;
    }
    hi = (hi + q / hi) / 2;
    // keep denominators small: round hi up, which preserves hi >= sqrt(q)
    bits = std::min<unsigned>(bits * 2, 4096);
    RationalInterval tmp(hi, hi);
    tmp.round_out(bits);
    hi = tmp.hi();
  }
  throw std::runtime_error("sqrt enclosure did not converge");
}

/// Enclosure of sqrt(x) for an interval x >= 0.
inline RationalInterval sqrt(const RationalInterval& x, const Rational& width) {
  if (x.lo() < 0) throw std::domain_error("sqrt of interval with negative part");
  RationalInterval l = sqrt(x.lo(), width), h = sqrt(x.hi(), width);
  return {l.lo(), h.hi()};
}

namespace detail {
/// Enclosure of arctan(1/n), n >= 2, by alternating partial sums.
inline RationalInterval arctan_inv(long n, const Rational& width) {
  Rational x = rat(1, n), x2 = x * x, term = x, sum = 0;
  for (long k = 0;; ++k) {
    Rational t = term / (2 * k + 1);
    Rational next = sum + (k % 2 == 0 ? t : Rational(-t));
    if (t <= width) {
      return {std::min(sum, next), std::max(sum, next)};
    }
    sum = next;
    term *= x2;
  }
}
}  // namespace detail

/// pi = 16 arctan(1/5) - 4 arctan(1/239).
inline RationalInterval pi(const Rational& width) {
  RationalInterval a = detail::arctan_inv(5, width / 64), b = detail::arctan_inv(239, width / 64);
  RationalInterval p = RationalInterval(16) * a - RationalInterval(4) * b;
  p.round_out(kWorkBits);
  return p;
}

/// exp(x) for rational x; absolute accuracy about 2^-bits before squaring.
inline RationalInterval exp(const Rational& x, unsigned bits = kWorkBits) {
  if (x == 0) return RationalInterval(1);
  if (x < 0) {
    RationalInterval e = exp(Rational(-x), bits);
    RationalInterval r = RationalInterval(1) / e;
    return r.round_out(bits);
  }
  // halve until y <= 1/2, then Taylor with remainder y^(N+1)/(N+1)! * e^y <= 2 * that
  unsigned s = 0;
  Rational y = x;
  while (y > rat(1, 2)) {
    y /= 2;
    ++s;
  }
  Rational eps = Rational(1) / Rational(Integer(1) << (bits + 8));
  Rational sum = 1, term = 1;
  for (unsigned k = 1;; ++k) {
    term *= y;
    term /= k;
    sum += term;
    if (2 * term * y <= eps) {
      // remainder after this term <= term * y / (k+1) * 2
      break;
    }
  }
  Rational tail = 2 * term * y;
  RationalInterval r(sum, sum + tail);
  r.round_out(bits + 16);
  for (unsigned i = 0; i < s; ++i) {
    r = r * r;
    r.round_out(bits + 16);
  }
  return r;
}

/// exp over an interval (monotone).
inline RationalInterval exp(const RationalInterval& x, unsigned bits = kWorkBits) {
  RationalInterval l = exp(x.lo(), bits), h = exp(x.hi(), bits);
  return {l.lo(), h.hi()};
}

}  // namespace enclose

/// Frequently used constants, enclosed once.
struct Constants {
  RationalInterval pi, sqrt_pi, sqrt2, sqrt3, fourth_root3;

  static const Constants& get() {
    static const Constants c = [] {
      Constants k;
      Rational w = Rational(1) / Rational(Integer(1) << 220);
      k.pi = enclose::pi(w);
      k.sqrt_pi = enclose::sqrt(k.pi, w);
      k.sqrt2 = enclose::sqrt(Rational(2), w);
      k.sqrt3 = enclose::sqrt(Rational(3), w);
      k.fourth_root3 = enclose::sqrt(k.sqrt3, w);
      k.pi.round_out(enclose::kWorkBits);
      k.sqrt_pi.round_out(enclose::kWorkBits);
      k.sqrt2.round_out(enclose::kWorkBits);
      k.sqrt3.round_out(enclose::kWorkBits);
      k.fourth_root3.round_out(enclose::kWorkBits);
      return k;
    }();
    return c;
  }
};

}  // namespace hm
