#pragma once
/**
 * @file certificates.hpp
 * @brief The concrete polynomial bound certificates: the two remainders, the
 *        positivity of y_a, and the segment bounds on y_b that feed the
 *        complex-sector majorant.
 *
 * Every claimed constant is a parameter so that falsified claims can be
 * injected; the defaults are the published ones.
 */

#include "bound_cert.hpp"
#include "quasi_poly.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace hm::cert {

inline Partition r3_partition() {
  return {rat(0), rat(1, 4), rat(3, 5), rat(6, 5), rat(9, 5), rat(12, 5), rat(14, 5), rat(3)};
}
inline Partition r4_partition_sigma1() { return {rat(0), rat(2, 5), rat(4, 5), rat(14, 15), rat(1)}; }
inline Partition r4_partition_sigma2() { return {rat(0), rat(1, 3), rat(3, 4), rat(14, 15), rat(1)}; }
inline Partition yb2_partition() { return {rat(0), rat(1, 2), rat(14, 15), rat(1)}; }
inline Partition yb1_partition() { return {rat(0), rat(1, 2), rat(3, 4), rat(1)}; }
inline Partition ya_partition() { return {rat(0), rat(1), rat(2), rat(3)}; }

/// |R_3| < claimed on [0, 3].
inline BoundCertificate r3_certificate(const Rational& claimed = parse_rational("18e-6")) {
  return bound_abs_on_interval(quasi::remainder_r3(), r3_partition(), claimed, "r3");
}

/// y_a > 0 on [0, 3].
inline BoundCertificate ya_positive_certificate() {
  return prove_positive(quasi::build_ya().in_x(), ya_partition(), "ya_positive");
}

/// A bound |P/Q| < implied on the closed triangle and its mirror image,
/// obtained from |P|^2 < M2 |Q|^2 on the two upper edges. The implication
/// needs implied^2 >= M2, checked exactly.
struct SectorBound {
  std::string name;
  Rational m2;
  Rational implied;
  std::vector<BoundCertificate> edges;
  bool implication_holds = false;
  bool pass = false;
};

namespace detail {
inline SectorBound sector_bound(const std::string& name, const CxPoly& p, const CxPoly& q, const Partition& p1,
                                const Partition& p2, const Rational& m2, const Rational& implied) {
  SectorBound s{name, m2, implied, {}, false, false};
  s.edges.push_back(bound_ratio_on_segment(p, q, sigma1(), p1, m2, name + "/sigma1"));
  s.edges.push_back(bound_ratio_on_segment(p, q, sigma2(), p2, m2, name + "/sigma2"));
  s.implication_holds = implied > 0 && implied * implied >= m2;
  s.pass = s.implication_holds;
  for (const auto& e : s.edges) s.pass = s.pass && e.pass;
  return s;
}
}  // namespace detail

/// |R_4|^2 < m2 on both edges, hence |R_4| < implied.
inline SectorBound r4_certificates(const Rational& m2 = parse_rational("3e-5"), const Rational& implied = rat(3, 500)) {
  CxPoly r4 = complexify<Rational>(quasi::remainder_r4());
  return detail::sector_bound("r4", r4, CxPoly::constant(CRational(1)), r4_partition_sigma1(), r4_partition_sigma2(),
                              m2, implied);
}

/// |y_b|^2 < m2 on both edges; `coefficient` bounds 6|y_b|, so the implication
/// is checked as (coefficient/6)^2 >= m2.
inline SectorBound yb2_certificates(const Rational& m2 = rat(83, 50), const Rational& coefficient = Rational(8)) {
  CxPoly yb = complexify<Rational>(quasi::build_yb().in_x());
  SectorBound s = detail::sector_bound("yb2", yb, CxPoly::constant(CRational(1)), yb2_partition(), yb2_partition(), m2,
                                       Rational(coefficient / 6));
  s.implied = coefficient;
  return s;
}

/// |6 y_b^2 + x|^2 < m2 |x - 1|^2 on both edges, hence
/// |6 y_b^2 + x| < implied |x - 1|.
inline SectorBound yb1_certificates(const Rational& m2 = rat(144, 25), const Rational& implied = rat(12, 5)) {
  RatPoly yb = quasi::build_yb().in_x();
  CxPoly p = complexify<Rational>(Rational(6) * yb * yb + RatPoly::x());
  CxPoly q = complexify<Rational>(RatPoly::x() - RatPoly::constant(Rational(1)));
  return detail::sector_bound("yb1", p, q, yb1_partition(), yb1_partition(), m2, implied);
}

inline nlohmann::json to_json(const SectorBound& s) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : s.edges) edges.push_back(to_json(e));
  return {{"name", s.name},
          {"modulus_squared_claim", to_string(s.m2)},
          {"implied_bound", to_string(s.implied)},
          {"implication_holds", s.implication_holds},
          {"edges", edges},
          {"pass", s.pass}};
}

}  // namespace hm::cert
