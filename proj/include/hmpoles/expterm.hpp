#pragma once
/**
 * @file expterm.hpp
 * @brief Finite sums of exponential monomials
 *        coef * c~^cpow * pi^-pipow * e^{-m t} * t^{-k/2} * H^p
 *        with coefficients in Q(sqrt 2), where c~ = i/(2 sqrt(3 pi)) and H is
 *        a bounded symbol.
 */

#include "interval.hpp"
#include "rational.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hm::quasi {

/// Interval enclosures of the Stokes-type constants.
struct StokesConstants {
  /// |c_-| = 2^{-7/4}/sqrt(pi); c_- itself is i |c_-|.
  RationalInterval abs_c_minus;
  /// |c~| = 1/(2 sqrt(3 pi)); c~ itself is i |c~|.
  RationalInterval abs_c_tilde;
  /// |c~|^2 = 1/(12 pi).
  RationalInterval abs_c_tilde_sq;

  static const StokesConstants& get() {
    static const StokesConstants s = [] {
      const auto& k = Constants::get();
      Rational w = Rational(1) / Rational(Integer(1) << 200);
      StokesConstants r;
      RationalInterval two_quarter = enclose::sqrt(k.sqrt2, w);  // 2^{1/4}
      r.abs_c_minus = RationalInterval(1) / (RationalInterval(2) * k.sqrt2 * two_quarter * k.sqrt_pi);
      r.abs_c_tilde = RationalInterval(1) / (RationalInterval(2) * k.sqrt3 * k.sqrt_pi);
      r.abs_c_tilde_sq = RationalInterval(1) / (RationalInterval(12) * k.pi);
      r.abs_c_minus.round_out(enclose::kWorkBits);
      r.abs_c_tilde.round_out(enclose::kWorkBits);
      r.abs_c_tilde_sq.round_out(enclose::kWorkBits);
      return r;
    }();
    return s;
  }

  static std::complex<double> c_tilde() { return {0.0, 1.0 / (2.0 * std::sqrt(3.0 * M_PI))}; }
  static std::complex<double> c_minus() { return {0.0, std::pow(2.0, -1.75) / std::sqrt(M_PI)}; }
};

struct ExpKey {
  int m = 0;      ///< e^{-m t}
  int k = 0;      ///< t^{-k/2}
  int p = 0;      ///< power of the bounded symbol
  int cpow = 0;   ///< power of c~
  int pipow = 0;  ///< power of 1/pi

  auto tie() const { return std::tie(m, k, p, cpow, pipow); }
  friend bool operator<(const ExpKey& a, const ExpKey& b) { return a.tie() < b.tie(); }
  friend bool operator==(const ExpKey& a, const ExpKey& b) { return a.tie() == b.tie(); }
  friend ExpKey operator+(const ExpKey& a, const ExpKey& b) {
    return {a.m + b.m, a.k + b.k, a.p + b.p, a.cpow + b.cpow, a.pipow + b.pipow};
  }
};

struct ExpTerm {
  ExpKey key;
  QSqrt2 coeff;
};

/// Normalized sum (terms merged by key, zero coefficients dropped).
class ExpTermSum {
 public:
  ExpTermSum() = default;
  ExpTermSum(std::initializer_list<ExpTerm> terms) {
    for (const auto& t : terms) add(t.key, t.coeff);
  }
  static ExpTermSum constant(const QSqrt2& c) { return {ExpTerm{ExpKey{}, c}}; }
  static ExpTermSum term(ExpKey key, QSqrt2 c) { return {ExpTerm{key, std::move(c)}}; }

  void add(const ExpKey& key, const QSqrt2& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const std::map<ExpKey, QSqrt2>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  QSqrt2 coeff(const ExpKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? QSqrt2(0) : it->second;
  }

  ExpTermSum& operator+=(const ExpTermSum& o) {
    for (const auto& [key, c] : o.terms_) add(key, c);
    return *this;
  }
  ExpTermSum& operator-=(const ExpTermSum& o) {
    for (const auto& [key, c] : o.terms_) add(key, -c);
    return *this;
  }
  friend ExpTermSum operator+(ExpTermSum a, const ExpTermSum& b) { return a += b; }
  friend ExpTermSum operator-(ExpTermSum a, const ExpTermSum& b) { return a -= b; }
  friend ExpTermSum operator-(const ExpTermSum& a) { return ExpTermSum() - a; }
  friend ExpTermSum operator*(const ExpTermSum& a, const ExpTermSum& b) {
    ExpTermSum r;
    for (const auto& [ka, ca] : a.terms_)
      for (const auto& [kb, cb] : b.terms_) r.add(ka + kb, ca * cb);
    return r.reduced();
  }
  friend ExpTermSum operator*(const QSqrt2& s, const ExpTermSum& a) { return constant(s) * a; }
  friend bool operator==(const ExpTermSum& a, const ExpTermSum& b) { return a.terms_ == b.terms_; }

  /// d/dt; only defined for sums without the bounded symbol.
  ExpTermSum derivative() const {
    ExpTermSum r;
    for (const auto& [key, c] : terms_) {
      if (key.p != 0) throw std::domain_error("derivative of a term carrying the bounded symbol");
      if (key.m != 0) r.add(key, c * QSqrt2(-key.m));
      if (key.k != 0) {
        ExpKey k2 = key;
        k2.k += 2;
        r.add(k2, c * QSqrt2(rat(-key.k, 2)));
      }
    }
    return r;
  }

  /// Terms satisfying pred.
  template <class Pred>
  ExpTermSum filter(Pred&& pred) const {
    ExpTermSum r;
    for (const auto& [key, c] : terms_)
      if (pred(key)) r.terms_.emplace(key, c);
    return r;
  }

  /// Numerical value at complex t with the symbol set to `h` (principal
  /// branch of sqrt t).
  std::complex<double> eval(std::complex<double> t, std::complex<double> h = 0.0) const {
    const std::complex<double> ct = StokesConstants::c_tilde();
    std::complex<double> sum = 0.0;
    const std::complex<double> rt = std::sqrt(t);
    for (const auto& [key, c] : terms_) {
      std::complex<double> v = c.to_double();
      v *= std::pow(ct, key.cpow);
      v *= std::pow(M_PI, -key.pipow);
      v *= std::exp(-static_cast<double>(key.m) * t);
      v *= std::pow(rt, -key.k);
      if (key.p) v *= std::pow(h, key.p);
      sum += v;
    }
    return sum;
  }

  /// Magnitude bound |coef| |c~|^cpow pi^-pipow symbol_bound^p of one term.
  static RationalInterval magnitude(const ExpKey& key, const QSqrt2& c, const Rational& symbol_bound) {
    const auto& k = Constants::get();
    RationalInterval v = RationalInterval(c.a) + RationalInterval(c.b) * k.sqrt2;
    v = abs(v);
    v *= pow(StokesConstants::get().abs_c_tilde, static_cast<unsigned>(key.cpow));
    if (key.pipow > 0) v /= pow(k.pi, static_cast<unsigned>(key.pipow));
    if (key.pipow < 0) v *= pow(k.pi, static_cast<unsigned>(-key.pipow));
    if (key.p) v *= RationalInterval(pow(symbol_bound, static_cast<unsigned>(key.p)));
    return v;
  }

 private:
  /// Applies c~^2 = -1/(12 pi) is deliberately NOT done: keys keep the c~
  /// power so displayed coefficients compare verbatim.
  ExpTermSum reduced() const { return *this; }
  std::map<ExpKey, QSqrt2> terms_;
};

/// Shorthand for a single term coef * c~^cpow * pi^-pipow * e^{-mt} t^{-k/2} H^p.
inline ExpTermSum mono(QSqrt2 coef, int m, int k, int cpow = 0, int pipow = 0, int p = 0) {
  return ExpTermSum::term(ExpKey{m, k, p, cpow, pipow}, std::move(coef));
}

inline std::string describe(const ExpKey& key, const QSqrt2& c) {
  std::string s = to_string(c.a);
  if (c.b != 0) s += (c.b < 0 ? " - " : " + ") + to_string(abs(c.b)) + "*sqrt2";
  s = "(" + s + ")";
  if (key.cpow) s += " c~^" + std::to_string(key.cpow);
  if (key.pipow) s += " pi^-" + std::to_string(key.pipow);
  if (key.m) s += " e^{-" + std::to_string(key.m) + "t}";
  if (key.k) s += " t^{-" + std::to_string(key.k) + "/2}";
  if (key.p) s += " H^" + std::to_string(key.p);
  return s;
}

}  // namespace hm::quasi
