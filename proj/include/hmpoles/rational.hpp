#pragma once
/**
 * @file rational.hpp
 * @brief Exact scalars: GMP rationals, quadratic surds a + b*sqrt(D), and a
 *        minimal complex type over any of them.
 */

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hm {

using Integer = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rat: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational pow(const Rational& base, unsigned e) {
  Rational r = 1, b = base;
  while (e) {
    if (e & 1u) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int sign(const Rational& q) { return sgn(q); }

/// Parses "p/q", "p", "-1.25", "18e-6" or "3.5E+2" into an exact rational.
inline Rational parse_rational(std::string_view s) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational literal: '" + std::string(s) + "'");
  };
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) return fail();
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string n(s.substr(0, slash)), d(s.substr(slash + 1));
    if (n.empty() || d.empty()) return fail();
    Integer ni, di;
    if (ni.set_str(n[0] == '+' ? n.substr(1) : n, 10) != 0) return fail();
    if (di.set_str(d, 10) != 0) return fail();
    if (di == 0) throw std::domain_error("zero denominator in '" + std::string(s) + "'");
    return rat(ni, di);
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long exp10 = 0;
  bool any = false, dot = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any = true;
      if (dot) --exp10;
    } else if (c == '.' && !dot) {
      dot = true;
    } else {
      break;
    }
  }
  if (!any) return fail();
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') return fail();
    std::string e(s.substr(i + 1));
    if (e.empty()) return fail();
    std::size_t used = 0;
    long ev = 0;
    try {
      ev = std::stol(e, &used);
    } catch (const std::exception&) {
      return fail();
    }
    if (used != e.size()) return fail();
    exp10 += ev;
  }
  Integer n(digits, 10);
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
  Rational q = exp10 < 0 ? rat(n, p10) : Rational(Integer(n * p10));
  return neg ? Rational(-q) : q;
}

/// "p/q" (or "p" for integers).
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Decimal rendering truncated toward zero after `digits` fractional digits.
inline std::string to_decimal(const Rational& q, int digits = 30) {
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer scaled = abs(q.get_num()) * p10 / q.get_den();
  std::string s = scaled.get_str();
  if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
  std::string out = (q < 0 ? "-" : "") + s.substr(0, s.size() - digits);
  if (digits > 0) out += "." + s.substr(s.size() - digits);
  return out;
}

/// Decimal rendering in scientific form with `sig` significant digits.
inline std::string to_scientific(const Rational& q, int sig = 6) {
  if (q == 0) return "0";
  Rational a = abs(q);
  long e = 0;
  while (a >= 10) { a /= 10; ++e; }
  while (a < 1) { a *= 10; --e; }
  std::string m = to_decimal(a, sig - 1);
  return (q < 0 ? "-" : "") + m + "e" + std::to_string(e);
}

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact a + b*sqrt(D) with rational a, b; D is a positive non-square integer.
template <int D>
struct QuadraticSurd {
  static_assert(D > 1, "radicand must exceed one");
  Rational a, b;

  QuadraticSurd() = default;
  QuadraticSurd(long v) : a(v) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(Rational ra) : a(std::move(ra)) {}  // NOLINT(google-explicit-constructor)
  QuadraticSurd(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QuadraticSurd root() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  QuadraticSurd& operator+=(const QuadraticSurd& o) { a += o.a; b += o.b; return *this; }
  QuadraticSurd& operator-=(const QuadraticSurd& o) { a -= o.a; b -= o.b; return *this; }
  QuadraticSurd& operator*=(const QuadraticSurd& o) {
    Rational na = a * o.a + D * b * o.b;
    Rational nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }
  QuadraticSurd conjugate() const { return {a, Rational(-b)}; }
  /// Field norm a^2 - D b^2.
  Rational norm() const { return a * a - D * b * b; }
  QuadraticSurd inverse() const {
    Rational n = norm();
    if (n == 0) throw std::domain_error("QuadraticSurd: inverse of zero");
    return {Rational(a / n), Rational(-b / n)};
  }
  QuadraticSurd& operator/=(const QuadraticSurd& o) { return *this *= o.inverse(); }

  friend QuadraticSurd operator+(QuadraticSurd x, const QuadraticSurd& y) { return x += y; }
  friend QuadraticSurd operator-(QuadraticSurd x, const QuadraticSurd& y) { return x -= y; }
  friend QuadraticSurd operator*(QuadraticSurd x, const QuadraticSurd& y) { return x *= y; }
  friend QuadraticSurd operator/(QuadraticSurd x, const QuadraticSurd& y) { return x /= y; }
  friend QuadraticSurd operator-(const QuadraticSurd& x) { return {Rational(-x.a), Rational(-x.b)}; }
  friend bool operator==(const QuadraticSurd& x, const QuadraticSurd& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QuadraticSurd& x, const QuadraticSurd& y) { return !(x == y); }

  /// Exact sign of a + b*sqrt(D).
  int sign() const {
    int sa = sgn(a), sb = sgn(b);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with D b^2
    int c = cmp(Rational(a * a), Rational(D * b * b));
    return c == 0 ? 0 : (c > 0 ? sa : sb);
  }

  double to_double() const { return a.get_d() + b.get_d() * std::sqrt(static_cast<double>(D)); }
};

template <int D>
inline bool operator<(const QuadraticSurd<D>& x, const QuadraticSurd<D>& y) { return (x - y).sign() < 0; }

using QSqrt2 = QuadraticSurd<2>;
using QSqrt3 = QuadraticSurd<3>;

/// Complex numbers over an exact ring T (std::complex is only specified for
/// floating-point types).
template <class T>
struct Complex {
  T re, im;

  Complex() = default;
  Complex(long v) : re(v), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T r) : re(std::move(r)), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  static Complex i_unit() { return {T(0), T(1)}; }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    T nr = re * o.re - im * o.im;
    T ni = re * o.im + im * o.re;
    re = std::move(nr);
    im = std::move(ni);
    return *this;
  }
  Complex conj() const { return {re, T(-im)}; }
  T norm2() const { return re * re + im * im; }

  friend Complex operator+(Complex x, const Complex& y) { return x += y; }
  friend Complex operator-(Complex x, const Complex& y) { return x -= y; }
  friend Complex operator*(Complex x, const Complex& y) { return x *= y; }
  friend Complex operator-(const Complex& x) { return {T(-x.re), T(-x.im)}; }
  friend bool operator==(const Complex& x, const Complex& y) { return x.re == y.re && x.im == y.im; }
  friend bool operator!=(const Complex& x, const Complex& y) { return !(x == y); }
};

using CRational = Complex<Rational>;

}  // namespace hm
