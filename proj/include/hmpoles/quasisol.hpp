#pragma once
/**
 * @file quasisol.hpp
 * @brief Exponential-monomial quasi-solutions of the two normalized forms of
 *        PII, their remainders and the kernels of the correction equations,
 *        plus the changes of variables between x and t.
 *
 * Left form (t = (2/3) sqrt2 (-x)^{3/2}, y = cbrt(3t)/2 h):
 *   h'' + h'/t + h/2 - h/(9t^2) - h^3/2 = 0.
 * Right form (t = (2/3) x^{3/2}, y = (2/3)^{1/6} t^{1/3} h, h = e^{-t} h4 / (2 sqrt(pi t))):
 *   h4'' - 2 h4' + 5 h4/(36 t^2) - e^{-2t} h4^3 / (3 pi t) = 0.
 *
 * The bounded symbol H stands for h2 = t^{7/2} h1 in the left power-series part
 * (|H| <= 6/5), and for h1 itself in the h1 equation.
 */

#include "expterm.hpp"
#include "quasi_poly.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hm::quasi {

namespace detail {
inline QSqrt2 q(long n, long d = 1) { return QSqrt2(rat(n, d)); }
/// n/d * sqrt2.
inline QSqrt2 qs2(long n, long d = 1) { return QSqrt2(Rational(0), rat(n, d)); }
inline ExpTermSum one() { return ExpTermSum::constant(QSqrt2(1)); }
/// c~ e^{-t} / sqrt t
inline ExpTermSum e1() { return mono(1, 1, 1, 1); }
/// c~^2 e^{-2t} / t
inline ExpTermSum e2() { return mono(1, 2, 2, 2); }
/// t^{-j/2}
inline ExpTermSum tpow(int j) { return mono(1, 0, j); }
}  // namespace detail

/// Quasi-solution for the exponential correction on the left.
inline ExpTermSum build_ha() {
  using namespace detail;
  return mono(q(1, 2), 3, 3, 3) + mono(qs2(1, 2), 2, 2, 2) + mono(q(-41, 36), 1, 3, 1) + mono(q(1), 1, 1, 1) +
         mono(qs2(-17, 72), 0, 2) + mono(qs2(1), 0, 0);
}

/// Power-series part 1 - 1/(9t^2) + H/t^4 with H = h2.
inline ExpTermSum build_hp() {
  using namespace detail;
  return one() - mono(q(1, 9), 0, 4) + mono(q(1), 0, 8, 0, 0, 1);
}

/// Quasi-solution for the right form.
inline ExpTermSum build_hb() {
  using namespace detail;
  return one() - mono(q(85085, 2239488), 0, 6) + mono(q(385, 10368), 0, 4) - mono(q(5, 72), 0, 2) +
         mono(q(1, 24), 2, 2, 0, 1);
}

/// A sum split into the explicitly displayed head and the crudely bounded tail.
struct SplitSum {
  ExpTermSum head;
  ExpTermSum tail;
  ExpTermSum total() const { return head + tail; }
};

/// Remainder of h_a in the equation for the exponential correction.
inline ExpTermSum remainder_r1() {
  using namespace detail;
  const ExpTermSum ha = build_ha(), hp = build_hp();
  const ExpTermSum d1 = ha.derivative();
  const ExpTermSum lin = QSqrt2(rat(3, 2)) * (hp * hp) - mono(q(5, 36), 0, 4) - QSqrt2(rat(3, 2)) * one();
  return d1.derivative() - QSqrt2(2) * d1 - lin * ha - QSqrt2(rat(3, 2)) * (e1() * hp * ha * ha) -
         QSqrt2(rat(1, 2)) * (e2() * ha * ha * ha);
}

/// Head: symbol-free terms decaying no faster than t^{-7/2}.
inline SplitSum expand_r1() {
  ExpTermSum r = remainder_r1();
  auto in_head = [](const ExpKey& k) { return k.p == 0 && k.k <= 7; };
  return {r.filter(in_head), r.filter([&](const ExpKey& k) { return !in_head(k); })};
}

/// Remainder of h_b in the right form.
inline ExpTermSum remainder_r2() {
  using namespace detail;
  const ExpTermSum hb = build_hb();
  const ExpTermSum d1 = hb.derivative();
  return d1.derivative() - QSqrt2(2) * d1 + mono(q(5, 36), 0, 4) * hb - mono(q(1, 3), 2, 2, 0, 1) * hb * hb * hb;
}

/// Head: terms decaying no faster than t^{-3}.
inline SplitSum expand_r2() {
  ExpTermSum r = remainder_r2();
  auto in_head = [](const ExpKey& k) { return k.k <= 6; };
  return {r.filter(in_head), r.filter([&](const ExpKey& k) { return !in_head(k); })};
}

/// Linear, quadratic and cubic coefficients of the correction equations.
struct Kernels {
  SplitSum left_linear;    ///< head: symbol-free, k <= 3
  ExpTermSum left_quad;    ///< 3/2 c~^2 e^{-2t} h_a / t + 3/2 c~ e^{-t} h_p / sqrt t
  ExpTermSum left_cubic;   ///< c~^2 e^{-2t} / (2t)
  SplitSum right_linear;   ///< head: k <= 4 (t^{-2})
  ExpTermSum right_quad;   ///< e^{-2t} h_b / (pi t)
  ExpTermSum right_cubic;  ///< e^{-2t} / (3 pi t)
};

inline Kernels expand_linear_kernels() {
  using namespace detail;
  const ExpTermSum ha = build_ha(), hp = build_hp(), hb = build_hb();
  const QSqrt2 three_half(rat(3, 2));
  Kernels out;

  ExpTermSum kl = three_half * (e2() * ha * ha) + QSqrt2(3) * (e1() * hp * ha) + three_half * (hp * hp) -
                  mono(q(5, 36), 0, 4) - three_half * one();
  auto left_head = [](const ExpKey& k) { return k.p == 0 && k.k <= 3; };
  out.left_linear = {kl.filter(left_head), kl.filter([&](const ExpKey& k) { return !left_head(k); })};
  out.left_quad = three_half * (e2() * ha) + three_half * (e1() * hp);
  out.left_cubic = QSqrt2(rat(1, 2)) * e2();

  const ExpTermSum e2pi = mono(q(1), 2, 2, 0, 1);  // e^{-2t}/(pi t)
  ExpTermSum kr = e2pi * hb * hb - mono(q(5, 36), 0, 4);
  auto right_head = [](const ExpKey& k) { return k.k <= 4; };
  out.right_linear = {kr.filter(right_head), kr.filter([&](const ExpKey& k) { return !right_head(k); })};
  out.right_quad = e2pi * hb;
  out.right_cubic = QSqrt2(rat(1, 3)) * e2pi;
  return out;
}

/// Right side of h1'' - h1 = R_h(t, h1) obtained by substituting
/// h = 1 - 1/(9t^2) + h1/sqrt t into the left form; the symbol is h1.
inline ExpTermSum derive_rh() {
  using namespace detail;
  const ExpTermSum b = one() - mono(q(1, 9), 0, 4);
  const ExpTermSum g = mono(q(1), 0, 1, 0, 0, 1);  // h1 t^{-1/2}
  const ExpTermSum h = b + g;
  const ExpTermSum db = b.derivative();
  // h'' + h'/t for the symbol part reduces to t^{-1/2}(h1'' + h1/(4t^2)); the
  // h1'' piece is moved to the left, leaving the rest here.
  ExpTermSum rest = db.derivative() + db * tpow(2) + QSqrt2(rat(1, 2)) * h - mono(q(1, 9), 0, 4) * h -
                    QSqrt2(rat(1, 2)) * (h * h * h);
  const ExpTermSum sym = mono(q(1), 0, 0, 0, 0, 1);
  return -(sym + mono(q(1, 4), 0, 4, 0, 0, 1)) - tpow(-1) * rest;
}

/// The displayed form of R_h, used as an independent cross-check.
inline ExpTermSum displayed_rh() {
  using namespace detail;
  return mono(q(73, 162), 0, 7) - mono(q(1, 1458), 0, 11) + mono(q(-17, 36), 0, 4, 0, 0, 1) +
         mono(q(1, 54), 0, 8, 0, 0, 1) + mono(q(3, 2), 0, 1, 0, 0, 2) - mono(q(1, 6), 0, 5, 0, 0, 2) +
         mono(q(1, 2), 0, 2, 0, 0, 3);
}

// ---------------------------------------------------------------------------
// Changes of variables. Branches are principal; inputs whose image would leave
// the principal sheet are rejected so that the maps are mutually inverse.

inline void check_branch(std::complex<double> z, const char* what) {
  const double a = std::arg(z);
  if (!(a > -2.0 * M_PI / 3.0 - 1e-15 && a <= 2.0 * M_PI / 3.0 + 1e-15) || z == 0.0)
    throw std::domain_error(std::string(what) + ": argument outside the principal sheet");
}

/// t = (2/3) sqrt2 (-x)^{3/2}
inline std::complex<double> x_to_t_left(std::complex<double> x) {
  check_branch(-x, "x_to_t_left");
  return (2.0 / 3.0) * std::sqrt(2.0) * std::pow(-x, 1.5);
}
inline std::complex<double> t_to_x_left(std::complex<double> t) {
  if (t == 0.0) throw std::domain_error("t_to_x_left: t = 0");
  return -std::pow(3.0 * t / (2.0 * std::sqrt(2.0)), 2.0 / 3.0);
}
/// t = (2/3) x^{3/2}
inline std::complex<double> x_to_t_right(std::complex<double> x) {
  check_branch(x, "x_to_t_right");
  return (2.0 / 3.0) * std::pow(x, 1.5);
}
inline std::complex<double> t_to_x_right(std::complex<double> t) {
  if (t == 0.0) throw std::domain_error("t_to_x_right: t = 0");
  return std::pow(1.5 * t, 2.0 / 3.0);
}
/// y = cbrt(3t)/2 h
inline std::complex<double> y_from_h_left(std::complex<double> t, std::complex<double> h) {
  return std::pow(3.0 * t, 1.0 / 3.0) / 2.0 * h;
}
/// y = (2/3)^{1/6} t^{1/3} h
inline std::complex<double> y_from_h_right(std::complex<double> t, std::complex<double> h) {
  return std::pow(2.0 / 3.0, 1.0 / 6.0) * std::pow(t, 1.0 / 3.0) * h;
}

/// True when x lies in the left far-field region: |x| >= 3^{4/3}/2 and
/// 2pi/3 <= arg x <= pi.
inline bool in_left_region(std::complex<double> x) {
  const double a = std::arg(x);
  return std::abs(x) >= std::pow(3.0, 4.0 / 3.0) / 2.0 - 1e-12 && (a >= 2.0 * M_PI / 3.0 - 1e-12 || a == M_PI);
}

}  // namespace hm::quasi
