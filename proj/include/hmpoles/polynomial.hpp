#pragma once
/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials over an exact ring, with Taylor shifts,
 *        composition, interval evaluation and segment moduli.
 */

#include "interval.hpp"
#include "rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hm {

namespace detail {
template <class T>
bool is_zero(const T& x) { return x == T(0); }
}  // namespace detail

/// c[0] + c[1] x + ... ; trailing zeros are stripped so the zero polynomial
/// has no coefficients and degree -1.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }
  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial monomial(T v, std::size_t k) {
    std::vector<T> c(k + 1);
    c[k] = std::move(v);
    return Polynomial(std::move(c));
  }
  /// The identity polynomial x.
  static Polynomial x() { return monomial(T(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Polynomial(std::move(r));
  }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * T(static_cast<long>(k));
    return Polynomial(std::move(r));
  }

  /// Evaluates at any type S that T multiplies into (Horner).
  template <class S>
  S eval(const S& x) const {
    S acc = S(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc = acc * x;
      acc = acc + S(*it);
    }
    return acc;
  }
  T operator()(const T& x) const { return eval<T>(x); }

  /// p(q(x)).
  Polynomial compose(const Polynomial& q) const {
    Polynomial acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + constant(*it);
    return acc;
  }

  /// Coefficients of u -> p(c + u), by in-place Ruffini-Horner steps.
  Polynomial taylor_shift(const T& c) const {
    std::vector<T> a = c_;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] += c * a[j];
    return Polynomial(std::move(a));
  }

  /// Coefficients of u -> p(s u).
  Polynomial scale_arg(const T& s) const {
    std::vector<T> a = c_;
    T f = T(1);
    for (auto& v : a) {
      v *= f;
      f *= s;
    }
    return Polynomial(std::move(a));
  }

  template <class F>
  auto map(F&& f) const -> Polynomial<decltype(f(std::declval<T>()))> {
    using U = decltype(f(std::declval<T>()));
    std::vector<U> r;
    r.reserve(c_.size());
    for (const auto& v : c_) r.push_back(f(v));
    return Polynomial<U>(std::move(r));
  }

 private:
  void trim() {
    while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using RatPoly = Polynomial<Rational>;
using CxPoly = Polynomial<CRational>;

inline RatPoly ratpoly(std::initializer_list<Rational> c) { return RatPoly(std::vector<Rational>(c)); }

/// Interval Horner evaluation; encloses {p(x) : x in X}.
inline RationalInterval eval_interval(const RatPoly& p, const RationalInterval& x) {
  RationalInterval acc(0);
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + RationalInterval(*it);
  return acc;
}

/// |P(z1 + z2 t)|^2 as a real polynomial in t, for complex coefficients over T.
template <class T>
Polynomial<T> segment_modulus_squared(const Polynomial<Complex<T>>& p, const Complex<T>& z1, const Complex<T>& z2) {
  Polynomial<Complex<T>> lin({z1, z2});
  Polynomial<Complex<T>> q = p.compose(lin);
  auto re = q.map([](const Complex<T>& c) { return c.re; });
  auto im = q.map([](const Complex<T>& c) { return c.im; });
  return re * re + im * im;
}

/// Lifts a real polynomial to complex coefficients over a ring U that
/// contains the rationals.
template <class U>
Polynomial<Complex<U>> complexify(const RatPoly& p) {
  return p.map([](const Rational& c) { return Complex<U>(U(c)); });
}

inline std::string to_string(const RatPoly& p, const std::string& var = "x") {
  if (p.is_zero()) return "0";
  std::string s;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    std::string cs = to_string(abs(c));
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    if (k == 0) s += cs;
    else {
      if (abs(c) != 1) s += cs + "*";
      s += var;
      if (k > 1) s += "^" + std::to_string(k);
    }
  }
  return s;
}

}  // namespace hm
