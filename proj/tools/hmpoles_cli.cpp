// hmpoles: runs the certificate pipeline, scans the pole field, and evaluates
// the quasi-solutions at points.
//
//   hmpoles verify all|r3|r4|contraction-omega1|contraction-right|majorant-real|majorant-complex|gamma-table
//   hmpoles poles --region full --rmax 9 --grid 720 --tol 1e-17 --out poles
//   hmpoles eval yb 0
//
// Worker threads: HMPOLES_THREADS (default: hardware concurrency).

#include <hmpoles/evaluate.hpp>
#include <hmpoles/pii_solver.hpp>
#include <hmpoles/suite.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kPass = 0, kFail = 1, kIoError = 2;

int cmd_verify(const std::string& target, const std::string& out, const std::vector<std::string>& claims) {
  hm::suite::Config cfg;
  for (const auto& c : claims) {
    auto eq = c.find('=');
    if (eq == std::string::npos) {
      std::cerr << "bad --claim '" << c << "', expected name=value\n";
      return kFail;
    }
    if (!hm::suite::override_claim(cfg, c.substr(0, eq), hm::parse_rational(c.substr(eq + 1)))) {
      std::cerr << "unknown claim '" << c.substr(0, eq) << "'\n";
      return kFail;
    }
  }
  hm::suite::VerificationSuite suite(cfg);
  const hm::suite::SuiteReport rep = suite.run(target);
  for (const auto& c : rep.checks)
    std::cerr << c.name << ": " << hm::suite::to_string(c.status) << (c.failure.empty() ? "" : " (" + c.failure + ")")
              << "\n";
  const std::string text = hm::suite::to_json(rep).dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(out);
    if (!(f << text)) {
      std::cerr << "cannot write " << out << "\n";
      return kIoError;
    }
  }
  if (!rep.pass) {
    std::cerr << "first failing check: " << rep.first_failure() << "\n";
    return kFail;
  }
  std::cerr << "verify " << target << ": pass\n";
  return kPass;
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ':')) v.push_back(std::stod(tok));
  return v;
}

/// full | sector:DEG0:DEG1 | rect:RE0:RE1:IM0:IM1
hm::solver::ScanRegion parse_region(const std::string& spec, double rmax) {
  hm::solver::ScanRegion r;
  r.rmax = rmax;
  if (spec == "full") return r;
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> v = colon == std::string::npos ? std::vector<double>{} : split_numbers(spec.substr(colon + 1));
  if (kind == "sector" && v.size() == 2) {
    r.theta0 = v[0] * M_PI / 180;
    r.theta1 = v[1] * M_PI / 180;
    return r;
  }
  if (kind == "rect" && v.size() == 4) {
    r.rect = std::array<double, 4>{v[0], v[1], v[2], v[3]};
    return r;
  }
  throw std::invalid_argument("bad --region '" + spec + "'");
}

int cmd_poles(const std::string& region_spec, double rmax, int grid, double tol, const std::string& out) {
  hm::solver::ScanRegion region;
  hm::solver::SolverConfig cfg;
  try {
    if (!(rmax >= 0 && rmax <= 12)) throw std::invalid_argument("--rmax must lie in [0, 12]");
    if (grid < 1) throw std::invalid_argument("--grid must be positive");
    region = parse_region(region_spec, rmax);
    cfg.rel_tol = tol;
    cfg.abs_tol = tol * 1e-5;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kFail;
  }
  // Open the outputs first so an unwritable path fails before the scan.
  std::string base = out;
  if (base.size() > 4 && base.substr(base.size() - 4) == ".csv") base.resize(base.size() - 4);
  std::ofstream csv(base + ".csv"), svg(base + ".svg");
  if (!csv || !svg) {
    std::cerr << "cannot open " << base << ".csv / " << base << ".svg for writing\n";
    return kIoError;
  }
  const hm::solver::PoleSet set = hm::solver::scan_poles(region, grid, cfg);
  for (const auto& d : set.diagnostics) std::cerr << "diagnostic: " << d << "\n";
  hm::solver::write_csv(csv, set);
  hm::solver::write_svg(svg, set, region);
  csv.flush();
  svg.flush();
  if (!csv || !svg) {
    std::cerr << "write failed for " << base << "\n";
    return kIoError;
  }
  const auto counts = hm::solver::sector_counts(set);
  std::cout << "poles per sector:";
  for (int k = 0; k < 6; ++k) std::cout << " Xi" << k << "=" << counts[static_cast<std::size_t>(k)];
  std::cout << " (total " << set.poles.size() << ", rays " << set.rays << ")\n";
  return kPass;
}

int cmd_eval(const std::string& object, const std::string& point) {
  try {
    const hm::eval::Value v = hm::eval::evaluate(object, point);
    std::cout << v.text << "\n";
    return kPass;
  } catch (const std::exception& e) {
    std::cerr << "eval " << object << " " << point << ": " << e.what() << "\n";
    return kFail;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proof certificates and pole-field numerics for y'' = 2y^3 + xy"};
  app.require_subcommand(1);

  std::string target, report_out;
  std::vector<std::string> claims;
  auto* verify = app.add_subcommand("verify", "run certificate checks; exit 0 iff all pass");
  verify->add_option("target", target, "all or one check group")->required();
  verify->add_option("--out", report_out, "write the JSON report here instead of stdout");
  verify->add_option("--claim", claims, "override a claimed constant, name=value")->group("");

  std::string region = "full", poles_out = "poles";
  double rmax = 9, tol = 1e-17;
  int grid = 720;
  auto* poles = app.add_subcommand("poles", "scan the pole field; writes CSV and SVG");
  poles->add_option("--region", region, "full | sector:DEG0:DEG1 | rect:RE0:RE1:IM0:IM1")->capture_default_str();
  poles->add_option("--rmax", rmax, "radius of the scanned disc (<= 12)")->capture_default_str();
  poles->add_option("--grid", grid, "number of rays over the full circle")->capture_default_str();
  poles->add_option("--tol", tol, "relative step tolerance")->capture_default_str();
  poles->add_option("--out", poles_out, "output path prefix")->capture_default_str();

  std::string object, point;
  auto* eval = app.add_subcommand("eval", "evaluate ya|yb|y1|y2|ha|hb|r3|r4 at a point");
  eval->add_option("object", object)->required();
  eval->add_option("point", point, "p/q, decimal, or re,im")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : kFail;
  }

  try {
    if (*verify) {
      if (!hm::suite::is_target(target)) {
        std::cerr << "unknown verify target '" << target << "'\n";
        return kFail;
      }
      return cmd_verify(target, report_out, claims);
    }
    if (*poles) return cmd_poles(region, rmax, grid, tol, poles_out);
    if (*eval) return cmd_eval(object, point);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFail;
  }
  return kFail;
}
