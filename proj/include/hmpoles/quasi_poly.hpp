#pragma once
/**
 * @file quasi_poly.hpp
 * @brief Polynomial quasi-solutions of y'' = 2y^3 + xy near the origin and
 *        their remainders.
 */

#include "polynomial.hpp"
#include "rational.hpp"

#include <string>
#include <vector>

namespace hm::quasi {

/// A polynomial stored in a local variable u = x - shift, as published.
struct ShiftedPoly {
  std::string name;
  RatPoly local;
  Rational shift;
  std::string local_var;

  /// The same polynomial in the global variable x.
  RatPoly in_x() const { return local.taylor_shift(Rational(-shift)); }
  Rational operator()(const Rational& x) const { return local(Rational(x - shift)); }
};

namespace detail {
/// Builds sum num_k/den_k u^k from (num, den) pairs listed from degree 0 up.
inline RatPoly from_fractions(const std::vector<std::pair<long, long>>& nd) {
  std::vector<Rational> c;
  c.reserve(nd.size());
  for (const auto& [n, d] : nd) c.push_back(rat(n, d));
  return RatPoly(std::move(c));
}
}  // namespace detail

/// Real-axis quasi-solution on [0, 3], published in t = x - 3/2.
inline ShiftedPoly build_ya() {
  return {"ya",
          detail::from_fractions({{1413, 19685}, {-2759, 28279}, {1535, 28314}, {-125, 9667}, {-19, 21788},
                                  {90, 64211}, {-13, 44056}, {-1, 23450}, {1, 27779}, {-1, 192428},
                                  {-1, 625758}, {1, 1929701}}),
          rat(3, 2), "t"};
}

/// Majorant for the real-axis correction, published in s = x - 3/2.
inline ShiftedPoly build_y1() {
  return {"y1",
          detail::from_fractions({{5, 29696}, {-43, 172565}, {7, 46477}, {-3, 63886}, {1, 144870},
                                  {1, 526490476}, {-1, 35492113}, {-1, 15591646}, {1, 55140149}}),
          rat(3, 2), "s"};
}

/// Complex-sector quasi-solution, a polynomial in x.
inline ShiftedPoly build_yb() {
  return {"yb",
          detail::from_fractions({{98, 267}, {-153, 518}, {33530, 688889}, {203, 10806}, {-360, 36911},
                                  {-224, 30615}, {-93, 35396}, {-17, 20578}, {18, 61523}, {39, 53333},
                                  {13, 24088}, {11, 47200}, {1, 15201}, {1, 81755}, {1, 717099},
                                  {1, 13206825}}),
          Rational(0), "x"};
}

/// Radial majorant for the complex-sector correction, published in t = r - 1.
inline ShiftedPoly build_y2() {
  return {"y2",
          detail::from_fractions({{267, 9871}, {549, 7508}, {1261, 13159}, {424, 6079}, {128, 6441},
                                  {1013, 14669}, {293, 2551}, {-149, 6608}, {-855, 10951}, {265, 11857},
                                  {400, 11977}}),
          Rational(1), "t"};
}

/// y'' - 2y^3 - x y for a polynomial y in x.
inline RatPoly pii_remainder(const RatPoly& y) {
  return y.derivative().derivative() - rat(2) * y * y * y - RatPoly::x() * y;
}

/// Remainder of the real-axis quasi-solution, in x.
inline RatPoly remainder_r3() { return pii_remainder(build_ya().in_x()); }

/// Remainder of the complex-sector quasi-solution, in x.
inline RatPoly remainder_r4() { return pii_remainder(build_yb().in_x()); }

}  // namespace hm::quasi
