#pragma once
/**
 * @file evaluate.hpp
 * @brief Point evaluation of the named quasi-solutions and remainders.
 *
 * Polynomials are evaluated exactly at rational (or Gaussian-rational)
 * points. The exponential quasi-solutions are evaluated at real rational t as
 * interval enclosures.
 */

#include "expterm.hpp"
#include "interval.hpp"
#include "quasi_poly.hpp"
#include "quasisol.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hm::eval {

/// Evaluation point: "p/q", a decimal, or "re,im" for a complex point.
struct Point {
  Rational re, im;
  bool complex = false;
};

inline Point parse_point(const std::string& s) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_rational(s), Rational(0), false};
  return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)), true};
}

struct Value {
  std::string object;
  std::optional<CRational> exact;
  std::optional<RationalInterval> re_enclosure, im_enclosure;
  std::string text;  ///< printable rendering
};

inline const std::vector<std::string>& objects() {
  static const std::vector<std::string> o{"ya", "yb", "y1", "y2", "ha", "hb", "r3", "r4"};
  return o;
}

namespace detail {

/// Closed triangle with vertices 0, -9/(2 sqrt3), (9/4)(-1/sqrt3 + i), or
/// its mirror image. Exact: both edge conditions compare squares of
/// nonpositive quantities.
inline bool in_sector_triangle(const Point& p) {
  const Rational a = p.re, b = abs(p.im);
  if (a > 0) return false;
  if (b * b > 3 * a * a) return false;                 // arg within [2pi/3, pi]
  const Rational l = b - rat(9, 2);                    // below the far edge: sqrt3 a >= b - 9/2
  return l <= 0 && 3 * a * a <= l * l;
}

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw std::domain_error(msg);
}

inline std::string render(const CRational& v) {
  if (v.im == 0) return to_string(v.re);
  return to_string(v.re) + (v.im < 0 ? " - " : " + ") + to_string(abs(v.im)) + "*i";
}

/// Enclosure of one real-t term; returns it in the real or imaginary slot
/// according to the power of c~ = i |c~|.
inline void add_term(const quasi::ExpKey& key, const QSqrt2& c, const Rational& t, const RationalInterval& sqrt_t,
                     RationalInterval& re, RationalInterval& im) {
  const auto& k = Constants::get();
  if (key.p != 0) throw std::domain_error("cannot evaluate a term carrying the bounded symbol");
  RationalInterval v = RationalInterval(c.a) + RationalInterval(c.b) * k.sqrt2;
  v *= pow(quasi::StokesConstants::get().abs_c_tilde, static_cast<unsigned>(key.cpow));
  if (key.pipow > 0) v /= pow(k.pi, static_cast<unsigned>(key.pipow));
  if (key.m != 0) v *= enclose::exp(Rational(-key.m * t));
  if (key.k > 0) v /= pow(sqrt_t, static_cast<unsigned>(key.k));
  // i^cpow
  const int q = key.cpow % 4;
  if (q == 2 || q == 3) v = -v;
  (q % 2 == 0 ? re : im) += v;
}

inline Value exp_sum(const std::string& name, const quasi::ExpTermSum& s, const Rational& t) {
  const Rational width = Rational(1) / Rational(Integer(1) << 220);
  const RationalInterval sqrt_t = enclose::sqrt(t, width);
  RationalInterval re(0), im(0);
  for (const auto& [key, c] : s.terms()) add_term(key, c, t, sqrt_t, re, im);
  re.round_out(enclose::kWorkBits);
  im.round_out(enclose::kWorkBits);
  Value v{name, std::nullopt, re, im, {}};
  v.text = to_string(re, 30);
  if (!(im.lo() == 0 && im.hi() == 0)) v.text += " + i*(" + to_string(im, 30) + ")";
  return v;
}

inline Value poly(const std::string& name, const RatPoly& p, const Point& x) {
  CRational v = p.eval<CRational>(CRational(x.re, x.im));
  return {name, v, std::nullopt, std::nullopt, render(v)};
}

}  // namespace detail

/// Evaluates `object` at `point`; throws std::domain_error outside the
/// object's natural domain and std::invalid_argument for unknown objects.
inline Value evaluate(const std::string& object, const Point& x) {
  using detail::require;
  const bool real = x.im == 0;
  if (object == "ya" || object == "y1" || object == "r3") {
    require(real && x.re >= 0 && x.re <= 3, object + " is defined on the real interval [0, 3]");
    const RatPoly p = object == "ya"   ? quasi::build_ya().in_x()
                      : object == "y1" ? quasi::build_y1().in_x()
                                       : quasi::remainder_r3();
    return detail::poly(object, p, x);
  }
  if (object == "yb" || object == "r4") {
    require(detail::in_sector_triangle(x), object + " is defined on the left sector triangle and its mirror image");
    return detail::poly(object, object == "yb" ? quasi::build_yb().in_x() : quasi::remainder_r4(), x);
  }
  if (object == "y2") {
    require(real && x.re >= 0 && x.re <= rat(9, 4), "y2 is defined for radii in [0, 9/4]");
    return detail::poly(object, quasi::build_y2().in_x(), x);
  }
  if (object == "ha") {
    require(real && x.re >= 3, "ha is evaluated at real t >= 3");
    return detail::exp_sum(object, quasi::build_ha(), x.re);
  }
  if (object == "hb") {
    require(real && x.re > 0 && x.re * x.re >= 12, "hb is evaluated at real t >= 2 sqrt3");
    return detail::exp_sum(object, quasi::build_hb(), x.re);
  }
  throw std::invalid_argument("unknown object '" + object + "'");
}

inline Value evaluate(const std::string& object, const std::string& point) {
  return evaluate(object, parse_point(point));
}

}  // namespace hm::eval
