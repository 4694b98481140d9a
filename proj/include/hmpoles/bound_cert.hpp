#pragma once
/**
 * @file bound_cert.hpp
 * @brief Certified bounds for polynomials on intervals and on straight
 *        complex segments.
 *
 * On each cell [a, b] the polynomial is re-expanded exactly at the midpoint,
 * p(m + u) = sum c_k u^k with |u| <= h = (b - a)/2. The cubic head
 * c_0 + ... + c_3 u^3 is bounded by its exact extrema (critical points are
 * enclosed with a tight rational sqrt enclosure) and the tail by
 * sum_{k>=4} |c_k| h^k.
 */

#include "interval.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "rational.hpp"

#include <json.hpp>

#include <algorithm>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hm::cert {

using hm::to_string;

/// Strictly increasing breakpoints a = p_0 < ... < p_n = b.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<Rational> pts) : Partition(std::vector<Rational>(pts)) {}
  explicit Partition(std::vector<Rational> pts) : pts_(std::move(pts)) {
    if (pts_.size() < 2) throw std::invalid_argument("partition needs at least two breakpoints");
    for (std::size_t i = 1; i < pts_.size(); ++i)
      if (!(pts_[i - 1] < pts_[i])) throw std::invalid_argument("partition breakpoints must be strictly increasing");
  }
  const std::vector<Rational>& points() const { return pts_; }
  std::size_t cells() const { return pts_.size() - 1; }
  const Rational& a() const { return pts_.front(); }
  const Rational& b() const { return pts_.back(); }
  /// Throws unless the partition spans exactly [a, b].
  void require_span(const Rational& a, const Rational& b) const {
    if (pts_.front() != a || pts_.back() != b)
      throw std::invalid_argument("partition must cover [" + to_string(a) + ", " + to_string(b) + "]");
  }
  Partition bisected() const {
    std::vector<Rational> r;
    for (std::size_t i = 0; i + 1 < pts_.size(); ++i) {
      r.push_back(pts_[i]);
      r.push_back((pts_[i] + pts_[i + 1]) / 2);
    }
    r.push_back(pts_.back());
    return Partition(std::move(r));
  }

 private:
  std::vector<Rational> pts_;
};

enum class Kind { AbsBelow, Nonnegative, Positive };

inline const char* to_string(Kind k) {
  switch (k) {
    case Kind::AbsBelow: return "abs_below";
    case Kind::Nonnegative: return "nonnegative";
    case Kind::Positive: return "positive";
  }
  return "?";
}

struct CellResult {
  Rational a, b;
  /// Enclosure [lower, upper] of the polynomial over the cell.
  Rational lower, upper;
  Rational tail;
  bool pass = false;
  /// Set when the cell only passed after one uniform bisection.
  bool bisected = false;
};

struct BoundCertificate {
  std::string name;
  Kind kind = Kind::AbsBelow;
  int degree = 0;
  Partition partition;
  /// AbsBelow: the claimed strict upper bound on |p|. Otherwise unused (0).
  Rational claimed;
  /// AbsBelow: max over cells of the |p| bound. Otherwise: min lower bound.
  Rational global_bound;
  std::vector<CellResult> cells;
  bool pass = false;
  std::string note;
};

namespace detail {

inline RationalInterval enclose_coeff(const Rational& c, const Rational&) { return RationalInterval(c); }

inline RationalInterval enclose_coeff(const QSqrt3& c, const Rational& width) {
  if (c.b == 0) return RationalInterval(c.a);
  Rational w = width / (abs(c.b) + 1);
  RationalInterval s = enclose::sqrt(Rational(3), w);
  return RationalInterval(c.a) + RationalInterval(c.b) * s;
}

/// Exact enclosure of the extrema of q(u) = m0 + m1 u + m2 u^2 + m3 u^3 on
/// [-h, h]; returns {min lower bound, max upper bound}.
inline std::pair<Rational, Rational> cubic_range(const Rational& m0, const Rational& m1, const Rational& m2,
                                                 const Rational& m3, const Rational& h) {
  RatPoly q = ratpoly({m0, m1, m2, m3});
  Rational lo = std::min(q(-h), q(h)), hi = std::max(q(-h), q(h));
  auto consider = [&](const RationalInterval& u) {
    if (u.hi() < -h || u.lo() > h) return;
    RationalInterval v = eval_interval(q, u);
    lo = std::min(lo, v.lo());
    hi = std::max(hi, v.hi());
  };
  if (m3 != 0) {
    Rational disc = 4 * m2 * m2 - 12 * m1 * m3;
    if (disc >= 0) {
      Rational width = Rational(1) / Rational(Integer(10) * Integer("1000000000000000000000000000000"));
      RationalInterval s = enclose::sqrt(disc, width);
      RationalInterval base(Rational(-2 * m2));
      RationalInterval den(Rational(6 * m3));
      consider((base + s) / den);
      consider((base - s) / den);
    }
  } else if (m2 != 0) {
    consider(RationalInterval(Rational(-m1 / (2 * m2))));
  }
  return {lo, hi};
}

/// Encloses p over [a, b]; T is Rational or QSqrt3.
template <class T>
CellResult cell_enclosure(const Polynomial<T>& p, const Rational& a, const Rational& b) {
  CellResult r;
  r.a = a;
  r.b = b;
  Rational m = (a + b) / 2, h = (b - a) / 2;
  Polynomial<T> s = p.taylor_shift(T(m));
  const auto& c = s.coeffs();
  Rational width = Rational(1) / Rational(Integer(1) << 160);
  std::vector<RationalInterval> ci;
  ci.reserve(c.size());
  for (const auto& v : c) ci.push_back(enclose_coeff(v, width));
  Rational head[4];
  Rational tail = 0, hk = 1;
  for (std::size_t k = 0; k < ci.size(); ++k) {
    if (k < 4) {
      head[k] = ci[k].mid();
      tail += ci[k].rad() * hk;
    } else {
      tail += ci[k].mag() * hk;
    }
    hk *= h;
  }
  auto [lo, hi] = cubic_range(head[0], head[1], head[2], head[3], h);
  r.lower = lo - tail;
  r.upper = hi + tail;
  r.tail = tail;
  return r;
}

template <class T>
bool cell_passes(const CellResult& c, Kind kind, const Rational& claimed) {
  switch (kind) {
    case Kind::AbsBelow: return std::max(c.upper, Rational(-c.lower)) < claimed;
    case Kind::Nonnegative: return c.lower >= 0;
    case Kind::Positive: return c.lower > 0;
  }
  return false;
}

template <class T>
BoundCertificate certify(const std::string& name, const Polynomial<T>& p, const Partition& part, Kind kind,
                         const Rational& claimed, bool allow_bisection) {
  BoundCertificate cert;
  cert.name = name;
  cert.kind = kind;
  cert.degree = p.degree();
  cert.partition = part;
  cert.claimed = claimed;
  const auto& pts = part.points();
  cert.cells.resize(part.cells());
  parallel_for(part.cells(), [&](std::size_t i) {
    CellResult c = cell_enclosure(p, pts[i], pts[i + 1]);
    c.pass = cell_passes<T>(c, kind, claimed);
    if (!c.pass && allow_bisection) {
      Rational mid = (pts[i] + pts[i + 1]) / 2;
      CellResult l = cell_enclosure(p, pts[i], mid), r = cell_enclosure(p, mid, pts[i + 1]);
      bool ok = cell_passes<T>(l, kind, claimed) && cell_passes<T>(r, kind, claimed);
      if (ok) {
        c.lower = std::min(l.lower, r.lower);
        c.upper = std::max(l.upper, r.upper);
        c.tail = std::max(l.tail, r.tail);
        c.pass = true;
        c.bisected = true;
      }
    }
    cert.cells[i] = std::move(c);
  });
  cert.pass = true;
  for (std::size_t i = 0; i < cert.cells.size(); ++i) {
    const auto& c = cert.cells[i];
    Rational v = kind == Kind::AbsBelow ? std::max(c.upper, Rational(-c.lower)) : c.lower;
    if (i == 0) cert.global_bound = v;
    else cert.global_bound = kind == Kind::AbsBelow ? std::max(cert.global_bound, v) : std::min(cert.global_bound, v);
    cert.pass = cert.pass && c.pass;
  }
  return cert;
}

}  // namespace detail

/// Certifies sup_{[a,b]} |P| < claimed on the given partition.
inline BoundCertificate bound_abs_on_interval(const RatPoly& p, const Partition& part, const Rational& claimed,
                                              const std::string& name = "abs_bound", bool allow_bisection = false) {
  if (claimed <= 0) throw std::invalid_argument("claimed bound must be positive");
  return detail::certify(name, p, part, Kind::AbsBelow, claimed, allow_bisection);
}

/// Certifies P >= 0 on the partition's span.
inline BoundCertificate prove_nonnegative(const RatPoly& p, const Partition& part,
                                          const std::string& name = "nonnegative", bool allow_bisection = false) {
  return detail::certify(name, p, part, Kind::Nonnegative, Rational(0), allow_bisection);
}

/// Certifies P > 0 on the partition's span.
inline BoundCertificate prove_positive(const RatPoly& p, const Partition& part, const std::string& name = "positive",
                                       bool allow_bisection = false) {
  return detail::certify(name, p, part, Kind::Positive, Rational(0), allow_bisection);
}

/// Same as above for polynomials with coefficients in Q(sqrt 3).
inline BoundCertificate prove_nonnegative(const Polynomial<QSqrt3>& p, const Partition& part,
                                          const std::string& name = "nonnegative", bool allow_bisection = false) {
  return detail::certify(name, p, part, Kind::Nonnegative, Rational(0), allow_bisection);
}
inline BoundCertificate prove_positive(const Polynomial<QSqrt3>& p, const Partition& part,
                                       const std::string& name = "positive", bool allow_bisection = false) {
  return detail::certify(name, p, part, Kind::Positive, Rational(0), allow_bisection);
}

/// Straight segment t -> z1 + z2 t, t in [0, 1], with vertices in Q(sqrt 3)[i].
struct Segment {
  std::string name;
  Complex<QSqrt3> z1, z2;

  Segment conjugate() const { return {name + "*", z1.conj(), z2.conj()}; }
  std::complex<double> at(double t) const {
    return {z1.re.to_double() + z2.re.to_double() * t, z1.im.to_double() + z2.im.to_double() * t};
  }
};

/// Edge from -9/(2 sqrt 3) to (9/4)(-1/sqrt 3 + i).
inline Segment sigma1() {
  return {"sigma1", {QSqrt3(Rational(0), rat(-3, 2)), QSqrt3(0)}, {QSqrt3(Rational(0), rat(3, 4)), QSqrt3(rat(9, 4))}};
}
/// Edge from 0 to (9/4)(-1/sqrt 3 + i).
inline Segment sigma2() {
  return {"sigma2", {QSqrt3(0), QSqrt3(0)}, {QSqrt3(Rational(0), rat(-3, 4)), QSqrt3(rat(9, 4))}};
}

/// |P(z(t))|^2 as a polynomial in t with Q(sqrt 3) coefficients.
inline Polynomial<QSqrt3> modulus_squared_on(const CxPoly& p, const Segment& seg) {
  auto lift = p.map([](const CRational& c) { return Complex<QSqrt3>(QSqrt3(c.re), QSqrt3(c.im)); });
  return segment_modulus_squared(lift, seg.z1, seg.z2);
}

/// Certifies |P/Q| <= sqrt(M2) on the segment via M2 |Q|^2 - |P|^2 > 0 on
/// [0, 1]; a nonconstant Q is additionally certified zero-free there.
inline BoundCertificate bound_ratio_on_segment(const CxPoly& p, const CxPoly& q, const Segment& seg,
                                               const Partition& part, const Rational& m2,
                                               const std::string& name = "ratio_bound") {
  if (seg.z2.re.is_zero() && seg.z2.im.is_zero()) throw std::invalid_argument("degenerate segment");
  part.require_span(Rational(0), Rational(1));
  if (m2 <= 0) throw std::invalid_argument("M^2 must be positive");
  if (q.is_zero()) throw std::invalid_argument("zero denominator polynomial");
  Polynomial<QSqrt3> pp = modulus_squared_on(p, seg), qq = modulus_squared_on(q, seg);
  Polynomial<QSqrt3> gap = qq * QSqrt3(m2) - pp;
  BoundCertificate cert = prove_positive(gap, part, name);
  cert.claimed = m2;
  if (q.degree() > 0) {
    BoundCertificate qc = prove_positive(qq, part, name + "/denominator");
    if (!qc.pass) {
      cert.pass = false;
      cert.note = "denominator not certified zero-free on the segment";
    } else {
      cert.note = "denominator certified zero-free, min |Q|^2 >= " + to_scientific(qc.global_bound);
    }
  }
  return cert;
}

/// Rounds an upper bound up (or a lower bound down) to the 10^-digits grid so
/// reports stay readable without losing soundness.
inline Rational round_for_report(const Rational& v, bool up, int digits = 30) {
  Integer p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  Integer n = v.get_num() * p10, q;
  if (up) mpz_cdiv_q(q.get_mpz_t(), n.get_mpz_t(), v.get_den().get_mpz_t());
  else mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), v.get_den().get_mpz_t());
  return rat(q, p10);
}

inline nlohmann::json rational_json(const Rational& v, bool up) {
  Rational r = round_for_report(v, up);
  return {{"exact", to_string(r)}, {"decimal", to_scientific(r, 12)}};
}

inline nlohmann::json to_json(const BoundCertificate& c) {
  bool upper_kind = c.kind == Kind::AbsBelow;
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& cell : c.cells) {
    cells.push_back({{"a", to_string(cell.a)},
                     {"b", to_string(cell.b)},
                     {"lower", rational_json(cell.lower, false)},
                     {"upper", rational_json(cell.upper, true)},
                     {"tail", rational_json(cell.tail, true)},
                     {"bisected", cell.bisected},
                     {"pass", cell.pass}});
  }
  nlohmann::json part = nlohmann::json::array();
  for (const auto& p : c.partition.points()) part.push_back(to_string(p));
  nlohmann::json j = {{"name", c.name},
                      {"kind", to_string(c.kind)},
                      {"degree", c.degree},
                      {"partition", part},
                      {"global_bound", rational_json(c.global_bound, upper_kind)},
                      {"cells", cells},
                      {"pass", c.pass}};
  if (upper_kind || c.claimed != 0) j["claimed"] = {{"exact", to_string(c.claimed)}, {"decimal", to_scientific(c.claimed, 12)}};
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

}  // namespace hm::cert
