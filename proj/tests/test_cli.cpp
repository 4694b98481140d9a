#include <hmpoles/evaluate.hpp>
#include <hmpoles/suite.hpp>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#ifndef HMPOLES_CLI_PATH
#error "HMPOLES_CLI_PATH must name the built hmpoles executable"
#endif

namespace fs = std::filesystem;
using namespace hm;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

/// Runs the CLI with `args`, capturing stdout (stderr discarded).
Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + HMPOLES_CLI_PATH + "\" " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch_dir() {
  fs::path d = fs::temp_directory_path() / ("hmpoles_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const suite::SuiteReport& full_report() {
  static const suite::SuiteReport r = suite::VerificationSuite().run("all");
  return r;
}

}  // namespace

TEST(Suite, GroupsAndDependencies) {
  const auto& g = suite::group_names();
  ASSERT_EQ(g.size(), 7u);
  EXPECT_TRUE(suite::is_target("all"));
  EXPECT_FALSE(suite::is_target("everything"));
  EXPECT_THROW(suite::dependencies("nope"), std::invalid_argument);
  // every dependency is listed before its dependent
  for (std::size_t i = 0; i < g.size(); ++i)
    for (const auto& d : suite::dependencies(g[i])) {
      auto at = std::find(g.begin(), g.end(), d);
      ASSERT_NE(at, g.end());
      EXPECT_LT(static_cast<std::size_t>(at - g.begin()), i) << g[i] << " <- " << d;
    }
}

TEST(Suite, AllGroupsPass) {
  const auto& r = full_report();
  ASSERT_TRUE(r.pass) << r.first_failure();
  ASSERT_EQ(r.checks.size(), 7u);
  int last_level = -1;
  for (const auto& c : r.checks) {
    EXPECT_EQ(c.status, suite::Status::Pass) << c.name;
    EXPECT_GE(c.level, last_level);
    last_level = c.level;
    for (const auto& d : c.depends_on) EXPECT_LT(r.check(d).level, c.level);
  }
  EXPECT_TRUE(r.first_failure().empty());
}

TEST(Suite, SingleTargetRunsItsDependencies) {
  const auto r = suite::VerificationSuite().run("contraction-omega1");
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[0].name, "gamma-table");
  EXPECT_EQ(r.checks[1].name, "contraction-omega1");
  EXPECT_TRUE(r.pass);
  EXPECT_THROW(suite::VerificationSuite().run("bogus"), std::invalid_argument);
}

TEST(Suite, FailurePropagatesAsSkips) {
  suite::Config cfg;
  ASSERT_TRUE(suite::override_claim(cfg, "r3", parse_rational("16e-6")));
  EXPECT_FALSE(suite::override_claim(cfg, "no_such_claim", Rational(1)));
  const auto r = suite::VerificationSuite(cfg).run("majorant-complex");
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.first_failure().rfind("r3: bound ", 0), 0u) << r.first_failure();
  EXPECT_EQ(r.check("r3").status, suite::Status::Fail);
  EXPECT_EQ(r.check("majorant-real").status, suite::Status::Skipped);
  EXPECT_EQ(r.check("majorant-real").failure, "dependency r3 did not pass");
  EXPECT_EQ(r.check("majorant-complex").status, suite::Status::Skipped);
  EXPECT_EQ(r.check("r4").status, suite::Status::Pass);
}

TEST(Suite, ReportIsDeterministic) {
  const std::string a = suite::to_json(full_report()).dump();
  const std::string b = suite::to_json(suite::VerificationSuite().run("all")).dump();
  EXPECT_EQ(a, b);
  const auto j = nlohmann::json::parse(a);
  EXPECT_EQ(j["pass"], true);
  EXPECT_FALSE(j.contains("first_failure"));
  EXPECT_EQ(j["checks"].size(), 7u);
}

TEST(Eval, ExactValuesAndDomains) {
  EXPECT_EQ(eval::evaluate("yb", "0").text, "98/267");
  const auto r3 = eval::evaluate("r3", "0");
  ASSERT_TRUE(r3.exact.has_value());
  EXPECT_LT(abs(r3.exact->re), parse_rational("18e-6"));
  EXPECT_LT(eval::evaluate("y2", "9/4").exact->re, rat(6, 5));
  // a complex point inside the sector triangle
  const auto yb = eval::evaluate("yb", "-1,1");
  EXPECT_NE(yb.exact->im, 0);
  EXPECT_EQ(eval::evaluate("yb", "-1,-1").exact->im, -yb.exact->im);
  // exponential sums come back as enclosures
  const auto hb = eval::evaluate("hb", "4");
  ASSERT_TRUE(hb.re_enclosure.has_value());
  EXPECT_NEAR(hb.re_enclosure->mid().get_d(), std::real(quasi::build_hb().eval(4.0)), 1e-13);
  EXPECT_LT(hb.re_enclosure->width(), parse_rational("1e-40"));
  const auto ha = eval::evaluate("ha", "3");
  EXPECT_TRUE(ha.im_enclosure.has_value());
  EXPECT_NEAR(ha.re_enclosure->mid().get_d(), std::real(quasi::build_ha().eval(3.0)), 1e-13);
  EXPECT_NEAR(ha.im_enclosure->mid().get_d(), std::imag(quasi::build_ha().eval(3.0)), 1e-13);

  EXPECT_THROW(eval::evaluate("ya", "4"), std::domain_error);
  EXPECT_THROW(eval::evaluate("ya", "1,1"), std::domain_error);
  EXPECT_THROW(eval::evaluate("yb", "1"), std::domain_error);
  EXPECT_THROW(eval::evaluate("yb", "-4,0.1"), std::domain_error);
  EXPECT_THROW(eval::evaluate("hb", "3"), std::domain_error);
  EXPECT_THROW(eval::evaluate("zz", "1"), std::invalid_argument);
}

TEST(Eval, SectorTriangleMembershipIsExact) {
  using eval::detail::in_sector_triangle;
  // vertices: 0, -9/(2 sqrt3) ~ -2.598, (9/4)(-1/sqrt3 + i) ~ -1.299 + 2.25i
  EXPECT_TRUE(in_sector_triangle({Rational(0), Rational(0), true}));
  EXPECT_TRUE(in_sector_triangle({rat(-259, 100), Rational(0), true}));
  EXPECT_FALSE(in_sector_triangle({rat(-26, 10), Rational(0), true}));
  EXPECT_TRUE(in_sector_triangle({rat(-13, 10), rat(224, 100), true}));
  EXPECT_FALSE(in_sector_triangle({rat(-13, 10), rat(226, 100), true}));
  EXPECT_FALSE(in_sector_triangle({rat(-1, 10), rat(1, 2), true}));  // arg below 2pi/3
  EXPECT_TRUE(in_sector_triangle({rat(-13, 10), rat(-224, 100), true}));
}

TEST(Binary, VerifyExitCodes) {
  const auto ok = cli("verify gamma-table");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(nlohmann::json::parse(ok.out)["pass"], true);
  EXPECT_EQ(cli("verify r3 --claim r3=16e-6").code, 1);
  EXPECT_EQ(cli("verify r3 --claim bogus=1").code, 1);
  EXPECT_EQ(cli("verify nothing").code, 1);
  EXPECT_EQ(cli("verify r3 --out /nonexistent-dir/report.json").code, 2);
  const fs::path out = scratch_dir() / "r3.json";
  EXPECT_EQ(cli("verify r3 --out " + out.string()).code, 0);
  EXPECT_EQ(nlohmann::json::parse(slurp(out))["checks"][0]["name"], "r3");
}

TEST(Binary, EvalPrintsAndFails) {
  const auto r = cli("eval yb 0");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "98/267\n");
  EXPECT_EQ(cli("eval ya 5").code, 1);
  EXPECT_EQ(cli("eval nothing 1").code, 1);
  EXPECT_EQ(cli("eval ya abc").code, 1);
}

TEST(Binary, PolesWithEmptyRegion) {
  const fs::path base = scratch_dir() / "empty";
  const auto r = cli("poles --region rect:0:0:1:2 --out " + base.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total 0"), std::string::npos);
  EXPECT_EQ(slurp(base.string() + ".csv"), "re,im,residue_sign,confidence_radius\n");
  const std::string svg = slurp(base.string() + ".svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Binary, PolesArgumentErrors) {
  EXPECT_EQ(cli("poles --rmax 13 --out /tmp/x").code, 1);
  EXPECT_EQ(cli("poles --region sideways --out /tmp/x").code, 1);
  EXPECT_EQ(cli("poles --rmax 1 --grid 8 --out /nonexistent-dir/p").code, 2);
  EXPECT_EQ(cli("").code, 1);
}

TEST(Binary, PolesSectorScan) {
  const fs::path base = scratch_dir() / "sector";
  const auto r = cli("poles --region sector:60:120 --rmax 6 --grid 240 --out " + base.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("Xi1=4"), std::string::npos) << r.out;
  std::istringstream csv(slurp(base.string() + ".csv"));
  int rows = -1;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 4);
}
