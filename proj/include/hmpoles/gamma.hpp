#pragma once
/**
 * @file gamma.hpp
 * @brief Rigorous enclosures of Gamma at positive multiples of 1/4 and of the
 *        ratio sqrt(pi) Gamma(n/2 - 1/2) / (2 Gamma(n/2)) used by the vertical
 *        ray estimate.
 *
 * Gamma(1/4)^2 = (2 pi)^{3/2} / AGM(sqrt2, 1); the AGM is enclosed by the
 * monotone iterates b_k <= AGM <= a_k. Gamma(1/2) = sqrt(pi),
 * Gamma(3/4) = pi sqrt2 / Gamma(1/4), and larger arguments follow from
 * Gamma(x + 1) = x Gamma(x).
 */

#include "interval.hpp"
#include "rational.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace hm::gamma {

namespace detail {
inline Rational work_width() { return Rational(1) / Rational(Integer(1) << 230); }

inline RationalInterval agm_sqrt2_one() {
  const auto& k = Constants::get();
  RationalInterval a = k.sqrt2, b(1);
  for (int i = 0; i < 10; ++i) {
    RationalInterval an = (a + b) / RationalInterval(2);
    RationalInterval bn = enclose::sqrt(a * b, work_width());
    an.round_out(enclose::kWorkBits);
    bn.round_out(enclose::kWorkBits);
    a = std::move(an);
    b = std::move(bn);
  }
  // Arithmetic means decrease and geometric means increase towards the AGM.
  return {b.lo(), a.hi()};
}
}  // namespace detail

/// Gamma(1/4).
inline const RationalInterval& gamma_quarter() {
  static const RationalInterval g = [] {
    const auto& k = Constants::get();
    RationalInterval two_pi = RationalInterval(2) * k.pi;
    RationalInterval num = two_pi * enclose::sqrt(two_pi, detail::work_width());  // (2 pi)^{3/2}
    RationalInterval r = enclose::sqrt(num / detail::agm_sqrt2_one(), detail::work_width());
    return r.round_out(enclose::kWorkBits);
  }();
  return g;
}

/// Gamma(j/4) for j >= 1.
inline RationalInterval gamma_quarter_multiple(long j) {
  if (j < 1) throw std::domain_error("gamma_quarter_multiple: argument must be positive");
  const auto& k = Constants::get();
  const long r = (j - 1) % 4 + 1;  // base argument r/4 in {1/4, 1/2, 3/4, 1}
  RationalInterval g;
  switch (r) {
    case 1: g = gamma_quarter(); break;
    case 2: g = k.sqrt_pi; break;
    case 3: g = k.pi * k.sqrt2 / gamma_quarter(); break;
    default: g = RationalInterval(1); break;
  }
  for (long x = r; x < j; x += 4) g *= RationalInterval(rat(x, 4));
  return g.round_out(enclose::kWorkBits);
}

/// Gamma(q) for q a positive multiple of 1/4.
inline RationalInterval gamma_at(const Rational& q) {
  Rational four_q = q * 4;
  if (four_q.get_den() != 1) throw std::domain_error("gamma_at: argument must be a multiple of 1/4");
  return gamma_quarter_multiple(four_q.get_num().get_si());
}

/// sqrt(pi) Gamma(n/2 - 1/2) / (2 Gamma(n/2)) = int_0^inf (1 + v^2)^{-n/2} dv, n > 1.
inline RationalInterval vertical_ratio(const Rational& n) {
  if (n <= 1) throw std::domain_error("vertical_ratio: requires n > 1");
  RationalInterval r = Constants::get().sqrt_pi * gamma_at(Rational((n - 1) / 2)) /
                       (RationalInterval(2) * gamma_at(Rational(n / 2)));
  return r.round_out(enclose::kWorkBits);
}

/// Thread-safe cache of vertical_ratio keyed by n.
class GammaRatioTable {
 public:
  static GammaRatioTable& instance() {
    static GammaRatioTable t;
    return t;
  }

  RationalInterval operator()(const Rational& n) {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = table_.find(n);
    if (it != table_.end()) return it->second;
    RationalInterval v = vertical_ratio(n);
    table_.emplace(n, v);
    return v;
  }

  /// Snapshot of the entries computed so far.
  std::map<Rational, RationalInterval> entries() {
    std::lock_guard<std::mutex> lk(mu_);
    return table_;
  }

 private:
  std::mutex mu_;
  std::map<Rational, RationalInterval> table_;
};

/// Entry of the table self-check: ratio(n+2) must overlap ratio(n) (n-1)/n.
struct RatioCheck {
  Rational n;
  RationalInterval value;
  RationalInterval shifted;  ///< ratio(n+2)
  bool consistent = false;
  bool narrow = false;  ///< width <= 1e-20
};

inline bool overlaps(const RationalInterval& a, const RationalInterval& b) {
  return a.lo() <= b.hi() && b.lo() <= a.hi();
}

/// Checks the functional equation and the width bound for n = 3/2, 2, ..., up to n_max.
inline std::vector<RatioCheck> check_ratio_table(const Rational& n_max = Rational(12)) {
  std::vector<RatioCheck> out;
  auto& tab = GammaRatioTable::instance();
  const Rational tol = parse_rational("1e-20");
  for (Rational n = rat(3, 2); n <= n_max; n += rat(1, 2)) {
    RatioCheck c{n, tab(n), tab(Rational(n + 2))};
    RationalInterval predicted = c.value * RationalInterval(Rational((n - 1) / n));
    c.consistent = overlaps(predicted, c.shifted);
    c.narrow = c.value.width() <= tol;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace hm::gamma
