#pragma once
/**
 * @file majorant.hpp
 * @brief Comparison-function bounds for u'' = F(u, x).
 *
 * If G(u, x) >= |F(u, x)| is increasing in |u| and a function y satisfies
 *   y(a) > |u(a)|, y'(a) >= |u'(a)|, y'' >= G(y, x) on [a, b],
 * then |u| < y and |u'| <= y' on [a, b]. With the conditions at b instead
 * (y(b) > |u(b)|, y'(b) <= -|u'(b)|) the same holds after x -> -x.
 *
 * G is restricted to lin(x)|u| + quad(x)|u|^2 + cubic(x)|u|^3 + c with
 * polynomial coefficients; once y > 0 is certified, y'' - G(y, x) is an exact
 * polynomial and its sign is certified cell by cell.
 */

#include "bound_cert.hpp"
#include "certificates.hpp"
#include "opbounds.hpp"
#include "quasi_poly.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hm::majorant {

using cert::BoundCertificate;
using cert::Partition;

enum class Direction { Forward, Backward };

inline const char* to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

/// G(u, x) = lin |u| + quad |u|^2 + cubic |u|^3 + constant.
struct GSpec {
  RatPoly lin, quad, cubic;
  Rational constant;

  /// G(y(x), x) for y >= 0.
  RatPoly compose(const RatPoly& y) const {
    return lin * y + quad * y * y + cubic * y * y * y + RatPoly::constant(constant);
  }
};

struct Prerequisite {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct MajorantProblem {
  std::string name;
  std::string var = "x";
  Rational a, b;
  Direction dir = Direction::Forward;
  /// Bounds on |u| and |u'| at the anchored endpoint.
  Rational ic_value, ic_deriv;
  GSpec G;
  RatPoly y;
  std::vector<Prerequisite> prerequisites;
  /// Parameters the certificate would depend on besides `var`; empty for
  /// every problem built here.
  std::vector<std::string> free_parameters;

  const Rational& anchor() const { return dir == Direction::Forward ? a : b; }
};

struct EndpointCheck {
  std::string name;
  Rational value;  ///< y or y' at the anchor
  Rational bound;  ///< what it is compared against
  std::string relation;
  bool pass = false;
};

struct MajorantCertificate {
  std::string name;
  Direction dir = Direction::Forward;
  std::vector<Prerequisite> prerequisites;
  std::vector<EndpointCheck> endpoint;
  std::vector<BoundCertificate> coefficients;  ///< lin, quad, cubic >= 0
  bool constant_nonnegative = false;
  BoundCertificate y_positive;
  BoundCertificate defect;  ///< y'' - G(y, x) >= 0
  bool defect_strict = false;
  bool pass = false;
  std::string failure;  ///< first failing hypothesis, empty on pass
};

/// Checks the three hypotheses on the given partition of [a, b].
inline MajorantCertificate verify_majorant(const MajorantProblem& prob, const Partition& part) {
  part.require_span(prob.a, prob.b);
  MajorantCertificate c;
  c.name = prob.name;
  c.dir = prob.dir;
  c.prerequisites = prob.prerequisites;
  auto fail = [&](const std::string& why) {
    if (c.failure.empty()) c.failure = why;
  };
  for (const auto& p : prob.prerequisites)
    if (!p.pass) fail("prerequisite " + p.name);
  if (!prob.free_parameters.empty()) fail("problem depends on free parameters");

  const RatPoly dy = prob.y.derivative();
  const Rational& x0 = prob.anchor();
  Rational y0 = prob.y(x0), dy0 = dy(x0);
  c.endpoint.push_back({"value", y0, prob.ic_value, ">", y0 > prob.ic_value});
  if (prob.dir == Direction::Forward)
    c.endpoint.push_back({"derivative", dy0, prob.ic_deriv, ">=", dy0 >= prob.ic_deriv});
  else
    c.endpoint.push_back({"derivative", dy0, Rational(-prob.ic_deriv), "<=", dy0 <= -prob.ic_deriv});
  for (const auto& e : c.endpoint)
    if (!e.pass) fail("endpoint " + e.name);

  const char* names[] = {"lin", "quad", "cubic"};
  const RatPoly* coeffs[] = {&prob.G.lin, &prob.G.quad, &prob.G.cubic};
  for (int i = 0; i < 3; ++i) {
    c.coefficients.push_back(cert::prove_nonnegative(*coeffs[i], part, prob.name + "/G." + names[i]));
    if (!c.coefficients.back().pass) fail(std::string("G coefficient ") + names[i] + " not nonnegative");
  }
  c.constant_nonnegative = prob.G.constant >= 0;
  if (!c.constant_nonnegative) fail("G constant negative");

  // Bisection only refines where the breakpoints were not chosen for this.
  c.y_positive = cert::prove_positive(prob.y, part, prob.name + "/y_positive", true);
  if (!c.y_positive.pass) fail("y not positive");

  RatPoly defect = dy.derivative() - prob.G.compose(prob.y);
  c.defect = cert::prove_nonnegative(defect, part, prob.name + "/defect");
  c.defect_strict = c.defect.pass && c.defect.global_bound > 0;
  if (!c.defect.pass) fail("y'' - G(y) not certified nonnegative");

  c.pass = c.failure.empty();
  return c;
}

/// The same problem under x -> -x; a backward problem becomes a forward one.
inline MajorantProblem reflect(const MajorantProblem& p) {
  MajorantProblem r = p;
  r.name = p.name + "/reflected";
  r.a = -p.b;
  r.b = -p.a;
  r.dir = p.dir == Direction::Forward ? Direction::Backward : Direction::Forward;
  const Rational m1(-1);
  r.y = p.y.scale_arg(m1);
  r.G = {p.G.lin.scale_arg(m1), p.G.quad.scale_arg(m1), p.G.cubic.scale_arg(m1), p.G.constant};
  return r;
}

inline Partition reflect(const Partition& part) {
  std::vector<Rational> pts;
  for (auto it = part.points().rbegin(); it != part.points().rend(); ++it) pts.push_back(-*it);
  return Partition(std::move(pts));
}

// ---------------------------------------------------------------------------
// The two instances.

/// Claimed constants; defaults are the published ones.
struct Claims {
  Rational r3 = parse_rational("18e-6");
  Rational x3_value = parse_rational("8e-6");   ///< |y_HM(3) - 4/607|
  Rational x3_deriv = parse_rational("24e-6");  ///< |y_HM'(3) + 64/5375|
  Rational real_ic_value = parse_rational("85e-7");
  Rational real_ic_deriv = parse_rational("241e-7");
  Rational origin_value = parse_rational("11e-4");  ///< |y_HM(0) - 98/267|
  Rational origin_deriv = parse_rational("12e-4");  ///< |y_HM'(0) + 153/518|
  Rational r4_sq = parse_rational("3e-5");
  Rational r4 = rat(3, 500);
  Rational yb2_sq = rat(83, 50);
  Rational yb2 = Rational(8);  ///< bound on 6|y_b|
  Rational yb1_sq = rat(144, 25);
  Rational yb1 = rat(12, 5);
  Rational y2_max = rat(6, 5);
};

inline Partition real_axis_partition() { return {rat(0), rat(1), rat(2), rat(3)}; }
inline Partition sector_partition() {
  return {rat(0), rat(1, 5), rat(1, 2), rat(1), rat(3, 2), rat(9, 5), rat(2), rat(9, 4)};
}
inline Partition y2_max_partition() { return {rat(0), rat(1), rat(9, 4)}; }

/// Initial data at x = 3 for the real-axis correction u = y_HM - y_a,
/// propagated from the bounds at x = 3 through the exact offsets of y_a.
struct RealAxisInitialData {
  Rational ya3, dya3;
  Rational value_bound, deriv_bound;  ///< derived, exact
  bool right_values_pass = false;
  bool below_claims = false;
};

inline RealAxisInitialData real_axis_initial_data(const Claims& cl = {}) {
  RealAxisInitialData d;
  const RatPoly ya = quasi::build_ya().in_x();
  d.ya3 = ya(Rational(3));
  d.dya3 = ya.derivative()(Rational(3));
  d.value_bound = cl.x3_value + abs(Rational(rat(4, 607) - d.ya3));
  d.deriv_bound = cl.x3_deriv + abs(Rational(rat(-64, 5375) - d.dya3));
  const ops::InitialValueReport iv = ops::verify_right_initial_values();
  d.right_values_pass = iv.pass && iv.err_y.hi() < cl.x3_value && iv.err_dy.hi() < cl.x3_deriv;
  d.below_claims = d.value_bound < cl.real_ic_value && d.deriv_bound < cl.real_ic_deriv;
  return d;
}

/// Backward problem on [0, 3] for u = y_HM - y_a with
/// G = |u|(6 y_a^2 + x) + 6 y_a |u|^2 + 2 |u|^3 + r3.
inline MajorantProblem build_real_axis_problem(const Claims& cl = {}) {
  MajorantProblem p;
  p.name = "majorant-real";
  p.a = Rational(0);
  p.b = Rational(3);
  p.dir = Direction::Backward;
  const RatPoly ya = quasi::build_ya().in_x();
  p.G = {Rational(6) * ya * ya + RatPoly::x(), Rational(6) * ya, RatPoly::constant(Rational(2)), cl.r3};
  p.y = quasi::build_y1().in_x();

  const BoundCertificate r3 = cert::r3_certificate(cl.r3);
  p.prerequisites.push_back({"r3", r3.pass, "|R_3| <= " + to_scientific(r3.global_bound, 6)});
  const BoundCertificate pos = cert::ya_positive_certificate();
  p.prerequisites.push_back({"ya_positive", pos.pass, "min y_a >= " + to_scientific(pos.global_bound, 6)});
  const RealAxisInitialData d = real_axis_initial_data(cl);
  p.prerequisites.push_back({"values_at_3", d.right_values_pass, "bounds at x = 3 from the right-hand correction"});
  p.prerequisites.push_back({"initial_data", d.below_claims,
                             "|u(3)| < " + to_scientific(d.value_bound, 6) + ", |u'(3)| < " +
                                 to_scientific(d.deriv_bound, 6)});
  p.ic_value = cl.real_ic_value;
  p.ic_deriv = cl.real_ic_deriv;
  return p;
}

/// Bounds at the origin implied by a passing real-axis certificate.
struct OriginBounds {
  Rational ya_offset, y1_at_0, value_bound;     ///< |y_a(0) - 98/267|, y_1(0), their sum
  Rational dya_offset, dy1_at_0, deriv_bound;   ///< |y_a'(0) + 153/518|, |y_1'(0)|, their sum
  Rational value_target, deriv_target;
  bool certificate_pass = false;
  bool pass = false;
};

inline OriginBounds conclude_origin(const MajorantCertificate& real, const Claims& cl = {}) {
  OriginBounds o;
  const RatPoly ya = quasi::build_ya().in_x(), y1 = quasi::build_y1().in_x();
  const Rational zero(0);
  o.ya_offset = abs(Rational(ya(zero) - rat(98, 267)));
  o.y1_at_0 = y1(zero);
  o.value_bound = o.ya_offset + o.y1_at_0;
  o.dya_offset = abs(Rational(ya.derivative()(zero) + rat(153, 518)));
  o.dy1_at_0 = abs(y1.derivative()(zero));
  o.deriv_bound = o.dya_offset + o.dy1_at_0;
  o.value_target = cl.origin_value;
  o.deriv_target = cl.origin_deriv;
  o.certificate_pass = real.pass;
  o.pass = real.pass && o.y1_at_0 > 0 && o.value_bound < o.value_target && o.deriv_bound < o.deriv_target;
  return o;
}

/// Forward radial problem on [0, 9/4] for u(r) = y_HM(r e^{i theta}) - y_b(r e^{i theta}),
/// 2pi/3 <= theta <= pi, with G_2 = yb1 (r + 1)|u| + yb2 |u|^2 + 2|u|^3 + r4.
/// Since |x - 1| <= r + 1 and all sector bounds hold on the whole triangle,
/// G_2 does not depend on theta.
inline MajorantProblem build_sector_problem(const Claims& cl = {}, const OriginBounds* origin = nullptr) {
  const cert::SectorBound yb2 = cert::yb2_certificates(cl.yb2_sq, cl.yb2);
  const cert::SectorBound yb1 = cert::yb1_certificates(cl.yb1_sq, cl.yb1);
  if (!yb2.pass) throw std::runtime_error("build_sector_problem: prerequisite yb2 failed");
  if (!yb1.pass) throw std::runtime_error("build_sector_problem: prerequisite yb1 failed");
  const cert::SectorBound r4 = cert::r4_certificates(cl.r4_sq, cl.r4);
  if (!r4.pass) throw std::runtime_error("build_sector_problem: prerequisite r4 failed");

  std::optional<OriginBounds> own;
  if (!origin) {
    const MajorantProblem real = build_real_axis_problem(cl);
    own = conclude_origin(verify_majorant(real, real_axis_partition()), cl);
    origin = &*own;
  }

  MajorantProblem p;
  p.name = "majorant-complex";
  p.var = "r";
  p.a = Rational(0);
  p.b = rat(9, 4);
  p.dir = Direction::Forward;
  p.G = {RatPoly({cl.yb1, cl.yb1}), RatPoly::constant(cl.yb2), RatPoly::constant(Rational(2)), cl.r4};
  p.y = quasi::build_y2().in_x();
  p.prerequisites.push_back({"yb2", yb2.pass, "6|y_b| < " + hm::to_string(cl.yb2)});
  p.prerequisites.push_back({"yb1", yb1.pass, "|6 y_b^2 + x| < " + hm::to_string(cl.yb1) + " |x - 1|"});
  p.prerequisites.push_back({"r4", r4.pass, "|R_4| < " + hm::to_string(cl.r4)});
  // y_b(0) = 98/267 and y_b'(0) = -153/518, so the origin bounds carry over;
  // the radial derivative has the same modulus as the complex one.
  const RatPoly yb = quasi::build_yb().in_x();
  const bool same_anchor = yb(Rational(0)) == rat(98, 267) && yb.derivative()(Rational(0)) == rat(-153, 518);
  p.prerequisites.push_back({"origin_bounds", origin->pass && same_anchor, "bounds at 0 from the real-axis majorant"});
  p.ic_value = origin->value_target;
  p.ic_deriv = origin->deriv_target;
  return p;
}

/// max y_2 on [0, 9/4] below the claim, hence |y_HM - y_b| < claim on the sector.
struct SectorConclusion {
  BoundCertificate y2_bound;
  bool certificate_pass = false;
  bool pass = false;
};

inline SectorConclusion conclude_sector(const MajorantCertificate& complex, const Claims& cl = {}) {
  SectorConclusion s;
  s.y2_bound = cert::bound_abs_on_interval(quasi::build_y2().in_x(), y2_max_partition(), cl.y2_max, "y2_max");
  s.certificate_pass = complex.pass;
  s.pass = complex.pass && s.y2_bound.pass;
  return s;
}

struct EndpointReport {
  OriginBounds origin;
  SectorConclusion sector;
  bool pass = false;
};

inline EndpointReport conclude_endpoint_values(const MajorantCertificate& real, const MajorantCertificate& complex,
                                               const Claims& cl = {}) {
  EndpointReport r{conclude_origin(real, cl), conclude_sector(complex, cl), false};
  r.pass = r.origin.pass && r.sector.pass;
  return r;
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::json exact_json(const Rational& v) {
  return {{"exact", hm::to_string(v)}, {"decimal", to_scientific(v, 12)}};
}

inline nlohmann::json to_json(const MajorantProblem& p) {
  nlohmann::json pre = nlohmann::json::array();
  for (const auto& q : p.prerequisites) pre.push_back({{"name", q.name}, {"pass", q.pass}, {"detail", q.detail}});
  return {{"name", p.name},
          {"interval", {hm::to_string(p.a), hm::to_string(p.b)}},
          {"direction", to_string(p.dir)},
          {"ic_value", exact_json(p.ic_value)},
          {"ic_deriv", exact_json(p.ic_deriv)},
          {"G",
           {{"lin", hm::to_string(p.G.lin, p.var)},
            {"quad", hm::to_string(p.G.quad, p.var)},
            {"cubic", hm::to_string(p.G.cubic, p.var)},
            {"constant", exact_json(p.G.constant)}}},
          {"y", hm::to_string(p.y, p.var)},
          {"prerequisites", pre}};
}

inline nlohmann::json to_json(const MajorantCertificate& c) {
  nlohmann::json pre = nlohmann::json::array(), ends = nlohmann::json::array(), co = nlohmann::json::array();
  for (const auto& q : c.prerequisites) pre.push_back({{"name", q.name}, {"pass", q.pass}, {"detail", q.detail}});
  for (const auto& e : c.endpoint)
    ends.push_back({{"name", e.name}, {"value", exact_json(e.value)}, {"relation", e.relation},
                    {"bound", exact_json(e.bound)}, {"pass", e.pass}});
  for (const auto& k : c.coefficients) co.push_back(cert::to_json(k));
  nlohmann::json j = {{"name", c.name},
                      {"direction", to_string(c.dir)},
                      {"prerequisites", pre},
                      {"endpoint", ends},
                      {"coefficients", co},
                      {"constant_nonnegative", c.constant_nonnegative},
                      {"y_positive", cert::to_json(c.y_positive)},
                      {"defect", cert::to_json(c.defect)},
                      {"defect_strict", c.defect_strict},
                      {"pass", c.pass}};
  if (!c.failure.empty()) j["failure"] = c.failure;
  return j;
}

inline nlohmann::json to_json(const OriginBounds& o) {
  return {{"ya_offset", exact_json(o.ya_offset)},   {"y1_at_0", exact_json(o.y1_at_0)},
          {"value_bound", exact_json(o.value_bound)}, {"value_target", exact_json(o.value_target)},
          {"dya_offset", exact_json(o.dya_offset)}, {"dy1_at_0", exact_json(o.dy1_at_0)},
          {"deriv_bound", exact_json(o.deriv_bound)}, {"deriv_target", exact_json(o.deriv_target)},
          {"pass", o.pass}};
}

inline nlohmann::json to_json(const SectorConclusion& s) {
  return {{"y2_bound", cert::to_json(s.y2_bound)}, {"pass", s.pass}};
}

}  // namespace hm::majorant
