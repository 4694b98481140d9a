#include <hmpoles/expterm.hpp>
#include <hmpoles/gamma.hpp>

#include <gtest/gtest.h>
#include <mpfr.h>

#include <string>

using namespace hm;

namespace {

/// Rational enclosure [v - 2^-280, v + 2^-280] of an MPFR value computed at
/// 320 bits (faithful rounding leaves an error far below that).
RationalInterval from_mpfr(mpfr_t v) {
  mpf_t f;
  mpf_init2(f, 400);
  mpfr_get_f(f, v, MPFR_RNDN);
  Rational c{mpf_class(f)};
  mpf_clear(f);
  Rational eps = Rational(1) / Rational(Integer(1) << 280);
  return {Rational(c - eps), Rational(c + eps)};
}

RationalInterval mpfr_gamma_quarter(long j) {
  mpfr_t x, g;
  mpfr_inits2(320, x, g, static_cast<mpfr_ptr>(nullptr));
  mpfr_set_si(x, j, MPFR_RNDN);
  mpfr_div_ui(x, x, 4, MPFR_RNDN);  // exact
  mpfr_gamma(g, x, MPFR_RNDN);
  RationalInterval r = from_mpfr(g);
  mpfr_clears(x, g, static_cast<mpfr_ptr>(nullptr));
  return r;
}

bool overlap(const RationalInterval& a, const RationalInterval& b) { return gamma::overlaps(a, b); }

}  // namespace

TEST(Gamma, QuarterMultiplesAgreeWithMpfr) {
  for (long j = 1; j <= 48; ++j) {
    RationalInterval ours = gamma::gamma_quarter_multiple(j);
    EXPECT_TRUE(overlap(ours, mpfr_gamma_quarter(j))) << "Gamma(" << j << "/4)";
    EXPECT_LT(ours.width(), parse_rational("1e-50")) << j;
  }
}

TEST(Gamma, VerticalRatioAgreesWithMpfrRoute) {
  // sqrt(pi) Gamma(n/2 - 1/2) / (2 Gamma(n/2)) through MPFR for n = 3/2 .. 12.
  for (long twice_n = 3; twice_n <= 24; ++twice_n) {
    mpfr_t a, b, pi, r;
    mpfr_inits2(320, a, b, pi, r, static_cast<mpfr_ptr>(nullptr));
    mpfr_set_si(a, twice_n - 2, MPFR_RNDN);
    mpfr_div_ui(a, a, 4, MPFR_RNDN);
    mpfr_gamma(a, a, MPFR_RNDN);
    mpfr_set_si(b, twice_n, MPFR_RNDN);
    mpfr_div_ui(b, b, 4, MPFR_RNDN);
    mpfr_gamma(b, b, MPFR_RNDN);
    mpfr_const_pi(pi, MPFR_RNDN);
    mpfr_sqrt(pi, pi, MPFR_RNDN);
    mpfr_mul(r, pi, a, MPFR_RNDN);
    mpfr_div(r, r, b, MPFR_RNDN);
    mpfr_div_ui(r, r, 2, MPFR_RNDN);
    RationalInterval ref = from_mpfr(r);
    mpfr_clears(a, b, pi, r, static_cast<mpfr_ptr>(nullptr));
    RationalInterval ours = gamma::vertical_ratio(rat(twice_n, 2));
    EXPECT_TRUE(overlap(ours, ref)) << "n = " << twice_n << "/2";
  }
}

TEST(Gamma, ClosedFormsAtSmallN) {
  // n = 2: pi/2; n = 3: 1; n = 4: pi/4.
  const auto& k = Constants::get();
  EXPECT_TRUE(overlap(gamma::vertical_ratio(Rational(2)), k.pi / RationalInterval(2)));
  EXPECT_TRUE(overlap(gamma::vertical_ratio(Rational(3)), RationalInterval(1)));
  EXPECT_TRUE(overlap(gamma::vertical_ratio(Rational(4)), k.pi / RationalInterval(4)));
}

TEST(Gamma, TableSelfCheckPasses) {
  auto rows = gamma::check_ratio_table();
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) {
    EXPECT_TRUE(r.consistent) << to_string(r.n);
    EXPECT_TRUE(r.narrow) << to_string(r.n);
  }
  // cached entries are reused verbatim
  auto& tab = gamma::GammaRatioTable::instance();
  EXPECT_EQ(tab(rat(7, 2)).lo(), tab(rat(7, 2)).lo());
}

TEST(Gamma, RejectsInvalidArguments) {
  EXPECT_THROW(gamma::vertical_ratio(Rational(1)), std::domain_error);
  EXPECT_THROW(gamma::gamma_quarter_multiple(0), std::domain_error);
  EXPECT_THROW(gamma::gamma_at(rat(1, 3)), std::domain_error);
}

TEST(StokesConstants, ModulusSquaredConsistent) {
  const auto& s = quasi::StokesConstants::get();
  EXPECT_TRUE(overlap(s.abs_c_tilde * s.abs_c_tilde, s.abs_c_tilde_sq));
  EXPECT_NEAR(s.abs_c_tilde.mid().get_d(), std::abs(quasi::StokesConstants::c_tilde()), 1e-15);
  EXPECT_NEAR(s.abs_c_minus.mid().get_d(), std::abs(quasi::StokesConstants::c_minus()), 1e-15);
}
