#include <hmpoles/quasi_poly.hpp>
#include <hmpoles/quasisol.hpp>

#include <gtest/gtest.h>

#include <complex>

using namespace hm;
using namespace hm::quasi;
using cd = std::complex<double>;

namespace {

QSqrt2 q(long n, long d = 1) { return QSqrt2(rat(n, d)); }
/// (n/d) sqrt2; 1/(a sqrt2) is entered as sqrt2/(2a).
QSqrt2 s(long n, long d = 1) { return QSqrt2(Rational(0), rat(n, d)); }

/// Term coef c~^j e^{-jt} t^{-k/2}, the shape of every left-hand term.
ExpTermSum left(QSqrt2 c, int j, int k) { return mono(std::move(c), j, k, j); }
/// Term coef pi^{-p} e^{-mt} t^{-k/2}, the shape of every right-hand term.
ExpTermSum right(QSqrt2 c, int m, int k, int p) { return mono(std::move(c), m, k, 0, p); }

std::string dump(const ExpTermSum& d) {
  std::string out;
  for (const auto& [k, c] : d.terms()) out += "  " + describe(k, c) + "\n";
  return out;
}

}  // namespace

TEST(DisplayedForms, LeftRemainderHead) {
  ExpTermSum shown = left(s(-15, 4), 6, 6) + left(q(-29, 4), 5, 5) + left(s(157, 24), 4, 6) + left(s(-6), 4, 4) +
                     left(q(359, 24), 3, 5) + left(s(343, 576), 2, 6) + left(s(47, 6), 2, 4) +
                     left(q(-9409, 1728), 1, 5) + left(q(-27, 8), 7, 7) + left(q(33, 4), 5, 7) +
                     left(q(-1927, 1728), 3, 7) + left(q(-1609, 324), 1, 7) + left(s(-1513, 2592), 0, 6);
  ExpTermSum head = expand_r1().head;
  EXPECT_EQ(head, shown) << "difference:\n" << dump(head - shown);
}

TEST(DisplayedForms, LeftLinearKernelHead) {
  ExpTermSum shown = left(s(9, 2), 3, 3) + left(q(6), 2, 2) + left(s(-17, 24), 1, 3) + left(s(3), 1, 1);
  ExpTermSum head = expand_linear_kernels().left_linear.head;
  EXPECT_EQ(head, shown) << "difference:\n" << dump(head - shown);
}

TEST(DisplayedForms, RightRemainderHead) {
  ExpTermSum shown = right(q(163, 3456), 2, 6, 1) + right(q(5, 864), 4, 6, 2) + right(q(-1, 576), 6, 6, 3) +
                     right(q(-1, 24), 4, 4, 2) + right(q(23, 72), 2, 4, 1);
  ExpTermSum head = expand_r2().head;
  EXPECT_EQ(head, shown) << "difference:\n" << dump(head - shown);
}

TEST(DisplayedForms, RightLinearKernelHead) {
  ExpTermSum shown =
      right(q(-5, 36), 0, 4, 0) + right(q(-5, 36), 2, 4, 1) + right(q(1, 12), 4, 4, 2) + right(q(1), 2, 2, 1);
  ExpTermSum head = expand_linear_kernels().right_linear.head;
  EXPECT_EQ(head, shown) << "difference:\n" << dump(head - shown);
}

TEST(DisplayedForms, PowerSeriesRemainder) { EXPECT_EQ(derive_rh(), displayed_rh()); }

TEST(Expansion, LeftRemainderTailStaysInDisplayedIndexRanges) {
  const SplitSum r = expand_r1();
  EXPECT_EQ(r.total(), remainder_r1());
  for (const auto& [k, c] : r.tail.terms()) {
    SCOPED_TRACE(describe(k, c));
    switch (k.p) {
      case 0: EXPECT_TRUE(k.k >= 8 && k.k <= 11 && k.m <= 11); break;
      case 1: EXPECT_TRUE(k.k >= 8 && k.k <= 15 && k.m <= 7); break;
      case 2: EXPECT_TRUE(k.k >= 16 && k.k <= 19 && k.m <= 3); break;
      default: ADD_FAILURE() << "symbol power above 2";
    }
  }
  for (const auto& [k, c] : r.head.terms()) EXPECT_TRUE(k.k >= 4 && k.k <= 7 && k.p == 0);
}

TEST(Expansion, RightHeadAndTailPartitionTheRemainder) {
  const SplitSum r = expand_r2();
  EXPECT_EQ(r.total(), remainder_r2());
  for (const auto& [k, c] : r.tail.terms()) EXPECT_GT(k.k, 6);
}

// The remainders are re-evaluated from their defining equations with complex
// doubles and numerical derivatives.
TEST(Expansion, LeftRemainderMatchesDefiningEquation) {
  const ExpTermSum ha = build_ha(), r1 = remainder_r1();
  const cd ct = StokesConstants::c_tilde();
  for (cd t : {cd(4.0, -1.0), cd(3.0, 0.0), cd(0.5, -5.0)}) {
    const cd H = 0.3;
    const double h = 1e-3;
    auto f = [&](cd z) { return ha.eval(z); };
    const cd d1 = (f(t + h) - f(t - h)) / (2 * h);
    const cd d2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    const cd hp = 1.0 - 1.0 / (9.0 * t * t) + H / std::pow(t, 4);
    const cd a = f(t);
    const cd direct = d2 - 2.0 * d1 - (1.5 * hp * hp - 5.0 / (36.0 * t * t) - 1.5) * a -
                      3.0 * ct * std::exp(-t) * hp * a * a / (2.0 * std::sqrt(t)) -
                      ct * ct * std::exp(-2.0 * t) * a * a * a / (2.0 * t);
    EXPECT_LT(std::abs(direct - r1.eval(t, H)), 1e-6) << t;
  }
}

TEST(Expansion, RightRemainderMatchesDefiningEquation) {
  const ExpTermSum hb = build_hb(), r2 = remainder_r2();
  for (double t : {2 * std::sqrt(3.0), 5.0, 9.0}) {
    const double h = 1e-3;
    auto f = [&](double z) { return hb.eval(z).real(); };
    const double d1 = (f(t + h) - f(t - h)) / (2 * h);
    const double d2 = (f(t + h) - 2 * f(t) + f(t - h)) / (h * h);
    const double b = f(t);
    const double direct = d2 - 2 * d1 + 5 / (36 * t * t) * b - std::exp(-2 * t) * b * b * b / (3 * M_PI * t);
    EXPECT_NEAR(direct, r2.eval(t).real(), 1e-7) << t;
  }
}

TEST(Expansion, DerivativeMatchesFiniteDifferences) {
  const ExpTermSum ha = build_ha();
  const ExpTermSum d = ha.derivative();
  const cd t(5.0, -2.0);
  const double h = 1e-5;
  cd fd = (ha.eval(t + h) - ha.eval(t - h)) / (2 * h);
  EXPECT_LT(std::abs(fd - d.eval(t)), 1e-8);
  EXPECT_THROW(build_hp().derivative(), std::domain_error);
}

TEST(PolynomialQuasiSolutions, AnchorsAtTheOrigin) {
  const RatPoly yb = build_yb().in_x();
  EXPECT_EQ(yb(Rational(0)), rat(98, 267));
  EXPECT_EQ(yb.derivative()(Rational(0)), rat(-153, 518));
  EXPECT_EQ(build_yb().in_x().degree(), 15);
}

TEST(PolynomialQuasiSolutions, ShiftedFormsAgree) {
  for (const auto& p : {build_ya(), build_y1(), build_y2(), build_yb()})
    for (int i = -4; i <= 12; ++i) {
      Rational x = rat(i, 4);
      EXPECT_EQ(p(x), p.in_x()(x)) << p.name;
    }
}

TEST(PolynomialQuasiSolutions, RemaindersAreThePiiResidual) {
  const RatPoly ya = build_ya().in_x(), r3 = remainder_r3();
  for (int i = 0; i <= 12; ++i) {
    const Rational x = rat(i, 4);
    const Rational y = ya(x);
    EXPECT_EQ(r3(x), ya.derivative().derivative()(x) - 2 * y * y * y - x * y);
  }
  const RatPoly yb = build_yb().in_x();
  EXPECT_EQ(remainder_r4().degree(), 3 * yb.degree());
}

TEST(ChangeOfVariables, RoundTrips) {
  for (cd x : {cd(-3, 0), cd(-2, 1.5), cd(-4, -0.5)}) EXPECT_LT(std::abs(t_to_x_left(x_to_t_left(x)) - x), 1e-12);
  for (cd x : {cd(3, 0), cd(2, 1.5), cd(1, -1)}) EXPECT_LT(std::abs(t_to_x_right(x_to_t_right(x)) - x), 1e-12);
  EXPECT_THROW(x_to_t_right(cd(-1, 0.01)), std::domain_error);
  EXPECT_THROW(t_to_x_left(0.0), std::domain_error);
  // |t| = 3 on the left corresponds to |x| = 3^{4/3}/2
  EXPECT_NEAR(std::abs(x_to_t_left(cd(-std::pow(3.0, 4.0 / 3.0) / 2, 0))), 3.0, 1e-12);
  EXPECT_TRUE(in_left_region(cd(-3, 0)));
  EXPECT_FALSE(in_left_region(cd(-1, 0)));
}

TEST(ChangeOfVariables, RightFormReproducesTheAiryScale) {
  // e^{-t} / (2 sqrt(pi) x^{1/4}) h_b(t) tracks Ai(x); at x = 6 the relative
  // difference is below 1e-4.
  const double x = 6, t = 2.0 / 3.0 * std::pow(x, 1.5);
  const double y = std::exp(-t) / (2 * std::sqrt(M_PI) * std::pow(x, 0.25)) * build_hb().eval(t).real();
  const double ai = 9.9476943602529e-06;  // Ai(6)
  EXPECT_NEAR(y / ai, 1.0, 1e-4);
}
