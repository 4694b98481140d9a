#include <hmpoles/majorant.hpp>
#include <hmpoles/pii_solver.hpp>

#include <gtest/gtest.h>

#include <complex>

using namespace hm;
using namespace hm::majorant;

namespace {

using cd = std::complex<double>;

cd eval_d(const RatPoly& p, cd x) {
  cd acc = 0;
  const auto& c = p.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

/// u'' >= 0 majorant: G = 0, y = 1 + x^2 on [0, 1].
MajorantProblem toy() {
  MajorantProblem p;
  p.name = "toy";
  p.a = Rational(0);
  p.b = Rational(1);
  p.dir = Direction::Forward;
  p.G = {RatPoly::constant(Rational(0)), RatPoly::constant(Rational(0)), RatPoly::constant(Rational(0)), Rational(0)};
  p.y = RatPoly({Rational(1), Rational(0), Rational(1)});
  p.ic_value = rat(1, 2);
  p.ic_deriv = Rational(0);
  return p;
}

const Partition unit{rat(0), rat(1, 2), rat(1)};

}  // namespace

TEST(Majorant, TrivialProblemPasses) {
  auto c = verify_majorant(toy(), unit);
  ASSERT_TRUE(c.pass) << c.failure;
  EXPECT_TRUE(c.defect_strict);  // y'' = 2
  EXPECT_EQ(c.defect.global_bound, Rational(2));
}

TEST(Majorant, DegenerateInitialValueFails) {
  MajorantProblem p = toy();
  p.ic_value = Rational(1);  // y(0) = 1 is not strictly above
  auto c = verify_majorant(p, unit);
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.failure, "endpoint value");

  p = toy();
  p.ic_deriv = rat(1, 10);  // y'(0) = 0
  EXPECT_EQ(verify_majorant(p, unit).failure, "endpoint derivative");
}

TEST(Majorant, EachHypothesisIsEnforced) {
  MajorantProblem p = toy();
  p.G.lin = RatPoly({Rational(-1)});
  EXPECT_EQ(verify_majorant(p, unit).failure, "G coefficient lin not nonnegative");

  p = toy();
  p.G.constant = Rational(-1);
  EXPECT_EQ(verify_majorant(p, unit).failure, "G constant negative");

  p = toy();
  p.G.constant = Rational(3);  // y'' = 2 < 3
  EXPECT_EQ(verify_majorant(p, unit).failure, "y'' - G(y) not certified nonnegative");

  p = toy();
  p.free_parameters = {"eta"};
  EXPECT_EQ(verify_majorant(p, unit).failure, "problem depends on free parameters");

  p = toy();
  p.prerequisites.push_back({"upstream", false, ""});
  EXPECT_EQ(verify_majorant(p, unit).failure, "prerequisite upstream");

  p = toy();
  p.y = RatPoly({Rational(1), Rational(-3), Rational(2)});  // 1 - 3x + 2x^2 vanishes at 1/2
  p.ic_deriv = Rational(-4);
  EXPECT_EQ(verify_majorant(p, unit).failure, "y not positive");

  EXPECT_THROW(verify_majorant(toy(), Partition{rat(0), rat(1, 2)}), std::invalid_argument);
}

TEST(Majorant, ReflectionIsSymmetric) {
  const MajorantProblem p = toy();
  const MajorantProblem r = reflect(p);
  EXPECT_EQ(r.dir, Direction::Backward);
  EXPECT_EQ(r.a, Rational(-1));
  EXPECT_EQ(r.b, Rational(0));
  auto c = verify_majorant(p, unit), d = verify_majorant(r, reflect(unit));
  EXPECT_EQ(c.pass, d.pass);
  EXPECT_EQ(c.defect.global_bound, d.defect.global_bound);
  EXPECT_EQ(c.y_positive.global_bound, d.y_positive.global_bound);
  // the backward problem with a positive slope at its anchor fails
  MajorantProblem bad = r;
  bad.y = RatPoly({Rational(1), Rational(1), Rational(1)});
  EXPECT_EQ(verify_majorant(bad, reflect(unit)).failure, "endpoint derivative");
}

TEST(RealAxis, CertificatePasses) {
  const MajorantProblem p = build_real_axis_problem();
  EXPECT_EQ(p.dir, Direction::Backward);
  for (const auto& q : p.prerequisites) EXPECT_TRUE(q.pass) << q.name;
  const auto c = verify_majorant(p, real_axis_partition());
  ASSERT_TRUE(c.pass) << c.failure;
  const auto o = conclude_origin(c);
  EXPECT_TRUE(o.pass);
  EXPECT_LT(o.value_bound, parse_rational("11e-4"));
  EXPECT_LT(o.deriv_bound, parse_rational("12e-4"));
}

TEST(RealAxis, InitialDataFollowFromTheRightCorrection) {
  const auto d = real_axis_initial_data();
  EXPECT_TRUE(d.right_values_pass);
  EXPECT_TRUE(d.below_claims);
  EXPECT_LT(d.value_bound, parse_rational("85e-7"));
  EXPECT_LT(d.deriv_bound, parse_rational("241e-7"));
}

TEST(RealAxis, FalsifiedClaimsFail) {
  Claims cl;
  cl.r3 = parse_rational("1e-6");
  auto c = verify_majorant(build_real_axis_problem(cl), real_axis_partition());
  EXPECT_FALSE(c.pass);
  EXPECT_EQ(c.failure, "prerequisite r3");

  cl = {};
  cl.real_ic_value = parse_rational("1e-7");
  EXPECT_EQ(verify_majorant(build_real_axis_problem(cl), real_axis_partition()).failure, "prerequisite initial_data");

  cl = {};
  cl.origin_value = parse_rational("1e-4");
  EXPECT_FALSE(conclude_origin(verify_majorant(build_real_axis_problem(), real_axis_partition()), cl).pass);
}

TEST(Sector, CertificatePasses) {
  const MajorantProblem real = build_real_axis_problem();
  const OriginBounds o = conclude_origin(verify_majorant(real, real_axis_partition()));
  const MajorantProblem p = build_sector_problem({}, &o);
  const auto c = verify_majorant(p, sector_partition());
  ASSERT_TRUE(c.pass) << c.failure;
  const auto s = conclude_sector(c);
  EXPECT_TRUE(s.pass);
  EXPECT_LT(s.y2_bound.global_bound, rat(6, 5));
  // building without the origin bounds recomputes them and agrees
  EXPECT_TRUE(verify_majorant(build_sector_problem(), sector_partition()).pass);
}

TEST(Sector, FalsifiedClaimsFail) {
  Claims cl;
  cl.yb2_sq = Rational(1);
  EXPECT_THROW(build_sector_problem(cl), std::runtime_error);
  cl = {};
  cl.r4_sq = parse_rational("1e-6");
  EXPECT_THROW(build_sector_problem(cl), std::runtime_error);
  cl = {};
  cl.y2_max = rat(1, 10);
  const auto c = verify_majorant(build_sector_problem(cl), sector_partition());
  EXPECT_TRUE(c.pass);
  EXPECT_FALSE(conclude_sector(c, cl).pass);
  // a failing real-axis step propagates into the sector prerequisites
  cl = {};
  cl.origin_deriv = parse_rational("1e-5");
  EXPECT_EQ(verify_majorant(build_sector_problem(cl), sector_partition()).failure, "prerequisite origin_bounds");
}

TEST(Sanity, NumericalSolutionStaysInsideTheRealEnvelope) {
  // |y_HM - y_a| <= y_1 on [0, 3]; y_HM from the ODE solver.
  const RatPoly ya = quasi::build_ya().in_x(), y1 = quasi::build_y1().in_x();
  const solver::SolverConfig cfg;
  const auto seed = solver::airy_seed(cfg.x_start);
  std::vector<solver::cplx> path{seed.x, 3.0};
  for (int i = 49; i >= 0; --i) path.push_back(3.0 * i / 50);
  const auto trace = solver::integrate_path(seed, path, cfg);
  int checked = 0;
  for (const auto& s : trace.samples) {
    const double x = s.x.real();
    if (x > 3 || std::abs(s.x.imag()) > 0) continue;
    const double gap = std::abs(s.y - eval_d(ya, x)), env = eval_d(y1, x).real();
    ASSERT_LE(gap, env + 1e-8) << "x = " << x;
    ++checked;
  }
  EXPECT_GE(checked, 50);
}

TEST(Sanity, NumericalSolutionStaysInsideTheSectorEnvelope) {
  // |y_HM - y_b| <= y_2(r) along rays of the sector 2pi/3 <= arg x <= pi.
  const RatPoly yb = quasi::build_yb().in_x(), y2 = quasi::build_y2().in_x();
  const solver::SolverConfig cfg;
  const auto origin = solver::origin_values(cfg);
  for (double th : {2 * M_PI / 3, 5 * M_PI / 6, M_PI}) {
    const auto trace = solver::integrate_path(origin, {0.0, std::polar(2.25, th)}, cfg);
    ASSERT_FALSE(trace.truncated);
    for (const auto& s : trace.samples) {
      const double r = std::abs(s.x);
      if (r > 2.25) continue;
      ASSERT_LE(std::abs(s.y - eval_d(yb, s.x)), eval_d(y2, r).real() + 1e-8) << "x = " << s.x;
    }
  }
}

TEST(Reports, JsonShape) {
  const auto p = build_real_axis_problem();
  auto j = to_json(p);
  EXPECT_EQ(j["direction"], "backward");
  EXPECT_EQ(j["G"]["constant"]["exact"], "9/500000");
  auto c = to_json(verify_majorant(p, real_axis_partition()));
  EXPECT_EQ(c["pass"], true);
  EXPECT_FALSE(c.contains("failure"));
}
