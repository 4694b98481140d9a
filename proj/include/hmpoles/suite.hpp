#pragma once
/**
 * @file suite.hpp
 * @brief The verification pipeline as a small dependency graph of named
 *        check groups, with a deterministic JSON report.
 *
 * Groups run level by level; groups on the same level are independent and run
 * concurrently. A group whose dependency did not pass is skipped, never run.
 */

#include "certificates.hpp"
#include "gamma.hpp"
#include "majorant.hpp"
#include "opbounds.hpp"
#include "parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hm::suite {

/// Every claimed constant the pipeline compares against.
struct Config {
  ops::Targets targets;
  majorant::Claims claims;
  Rational gamma_n_max = Rational(12);
};

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  std::vector<std::string> depends_on;
  int level = 0;
  Status status = Status::Skipped;
  std::string failure;  ///< first failing item, or the dependency that blocked it
  nlohmann::json report;
};

struct SuiteReport {
  std::string target;
  std::vector<CheckResult> checks;  ///< in execution order
  bool pass = false;

  std::string first_failure() const {
    for (const auto& c : checks)
      if (c.status != Status::Pass) return c.name + (c.failure.empty() ? "" : ": " + c.failure);
    return {};
  }
  const CheckResult& check(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw std::out_of_range("no check " + name);
  }
};

/// Group names in dependency order.
inline const std::vector<std::string>& group_names() {
  static const std::vector<std::string> names{"gamma-table",       "r3",           "r4",
                                              "contraction-omega1", "contraction-right", "majorant-real",
                                              "majorant-complex"};
  return names;
}

inline std::vector<std::string> dependencies(const std::string& name) {
  if (name == "contraction-omega1" || name == "contraction-right") return {"gamma-table"};
  if (name == "majorant-real") return {"r3", "contraction-right"};
  if (name == "majorant-complex") return {"r4", "majorant-real"};
  if (name == "gamma-table" || name == "r3" || name == "r4") return {};
  throw std::invalid_argument("unknown check group: " + name);
}

inline bool is_target(const std::string& name) {
  if (name == "all") return true;
  const auto& g = group_names();
  return std::find(g.begin(), g.end(), name) != g.end();
}

class VerificationSuite {
 public:
  explicit VerificationSuite(Config cfg = {}) : cfg_(std::move(cfg)) {}

  /// Runs `target` ("all" or one group) together with everything it depends on.
  SuiteReport run(const std::string& target) {
    if (!is_target(target)) throw std::invalid_argument("unknown verify target: " + target);
    std::vector<std::string> wanted;
    collect(target == "all" ? group_names() : std::vector<std::string>{target}, wanted);

    std::vector<CheckResult> results;
    for (const auto& n : group_names())
      if (std::find(wanted.begin(), wanted.end(), n) != wanted.end())
        results.push_back({n, dependencies(n), level_of(n), Status::Skipped, {}, nlohmann::json::object()});

    const int max_level = results.empty() ? 0 : std::max_element(results.begin(), results.end(), [](auto& a, auto& b) {
                                                    return a.level < b.level;
                                                  })->level;
    for (int lv = 0; lv <= max_level; ++lv) {
      std::vector<CheckResult*> batch;
      for (auto& r : results) {
        if (r.level != lv) continue;
        std::string blocked;
        for (const auto& d : r.depends_on)
          if (find(results, d)->status != Status::Pass && blocked.empty()) blocked = d;
        if (!blocked.empty()) {
          r.failure = "dependency " + blocked + " did not pass";
          continue;
        }
        batch.push_back(&r);
      }
      parallel_for(batch.size(), [&](std::size_t i) { execute(*batch[i]); });
    }

    SuiteReport rep{target, std::move(results), true};
    std::stable_sort(rep.checks.begin(), rep.checks.end(), [](auto& a, auto& b) { return a.level < b.level; });
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.status == Status::Pass;
    return rep;
  }

  const Config& config() const { return cfg_; }

 private:
  static int level_of(const std::string& n) {
    int lv = 0;
    for (const auto& d : dependencies(n)) lv = std::max(lv, level_of(d) + 1);
    return lv;
  }

  static void collect(const std::vector<std::string>& names, std::vector<std::string>& out) {
    for (const auto& n : names) {
      if (std::find(out.begin(), out.end(), n) != out.end()) continue;
      collect(dependencies(n), out);
      out.push_back(n);
    }
  }

  static CheckResult* find(std::vector<CheckResult>& v, const std::string& n) {
    for (auto& r : v)
      if (r.name == n) return &r;
    return nullptr;
  }

  void execute(CheckResult& r) {
    try {
      if (r.name == "gamma-table") gamma_table(r);
      else if (r.name == "r3") r3(r);
      else if (r.name == "r4") r4(r);
      else if (r.name == "contraction-omega1") omega1(r);
      else if (r.name == "contraction-right") right(r);
      else if (r.name == "majorant-real") real(r);
      else if (r.name == "majorant-complex") complex(r);
    } catch (const std::exception& e) {
      r.status = Status::Fail;
      r.failure = e.what();
    }
  }

  static void set(CheckResult& r, bool pass, std::string failure) {
    r.status = pass ? Status::Pass : Status::Fail;
    if (!pass) r.failure = std::move(failure);
  }

  void gamma_table(CheckResult& r) {
    auto rows = gamma::check_ratio_table(cfg_.gamma_n_max);
    nlohmann::json arr = nlohmann::json::array();
    std::string first;
    for (const auto& c : rows) {
      arr.push_back({{"n", hm::to_string(c.n)},
                     {"ratio", ops::interval_json(c.value)},
                     {"functional_equation", c.consistent},
                     {"width_ok", c.narrow}});
      if (first.empty() && !(c.consistent && c.narrow)) first = "n = " + hm::to_string(c.n);
    }
    r.report = {{"entries", arr}};
    set(r, first.empty(), first);
  }

  void r3(CheckResult& r) {
    const cert::BoundCertificate c = cert::r3_certificate(cfg_.claims.r3);
    r.report = {{"r3", cert::to_json(c)}};
    set(r, c.pass, "bound " + to_scientific(c.global_bound, 6) + " not below claim " + hm::to_string(c.claimed));
  }

  void r4(CheckResult& r) {
    const auto& cl = cfg_.claims;
    const cert::SectorBound parts[] = {cert::r4_certificates(cl.r4_sq, cl.r4), cert::yb2_certificates(cl.yb2_sq, cl.yb2),
                                       cert::yb1_certificates(cl.yb1_sq, cl.yb1)};
    std::string first;
    for (const auto& s : parts) {
      r.report[s.name] = cert::to_json(s);
      if (first.empty() && !s.pass) first = s.name;
    }
    set(r, first.empty(), first);
  }

  void omega1(CheckResult& r) {
    const ops::OpBoundReport hp = ops::verify_prop_hp(cfg_.targets);
    const ops::OpBoundReport d1 = ops::verify_prop_delta1(cfg_.targets);
    const ops::TailMajorantCheck tail = ops::tail_majorant_check(quasi::expand_r1().tail, cfg_.targets.hp_ball,
                                                                 ops::displayed_r12_majorant(), ops::left_region());
    const bool rh_matches = hp.notes.empty();
    r.report = {{"power_series", to_json(hp)},
                {"exponential", to_json(d1)},
                {"remainder_tail", to_json(tail)},
                {"rh_matches_displayed_form", rh_matches}};
    std::string first;
    if (!rh_matches) first = "R_h derivation";
    else if (!hp.pass) first = hp.name + "/" + hp.first_failure();
    else if (!d1.pass) first = d1.name + "/" + d1.first_failure();
    else if (!tail.pass) first = "remainder tail majorant";
    set(r, first.empty(), first);
  }

  void right(CheckResult& r) {
    const ops::OpBoundReport d2 = ops::verify_prop_delta2(cfg_.targets);
    const auto k = quasi::expand_linear_kernels();
    const ops::TailMajorantCheck t2 = ops::tail_majorant_check(quasi::expand_r2().tail, Rational(0),
                                                               ops::displayed_r22_majorant(), ops::right_region());
    const ops::TailMajorantCheck t4 = ops::tail_majorant_check(k.right_linear.tail, Rational(0),
                                                               ops::displayed_r24_majorant(), ops::right_region());
    const ops::InitialValueReport iv = ops::verify_right_initial_values(cfg_.targets);
    r.report = {{"correction", to_json(d2)},
                {"remainder_tail", to_json(t2)},
                {"linear_kernel_tail", to_json(t4)},
                {"values_at_3", to_json(iv)}};
    std::string first;
    if (!d2.pass) first = d2.name + "/" + d2.first_failure();
    else if (!t2.pass) first = "remainder tail majorant";
    else if (!t4.pass) first = "linear kernel tail majorant";
    else if (!iv.pass) first = "values at x = 3";
    set(r, first.empty(), first);
  }

  void real(CheckResult& r) {
    const majorant::MajorantProblem p = majorant::build_real_axis_problem(cfg_.claims);
    const majorant::MajorantCertificate c = majorant::verify_majorant(p, majorant::real_axis_partition());
    origin_ = majorant::conclude_origin(c, cfg_.claims);
    r.report = {{"problem", majorant::to_json(p)}, {"certificate", majorant::to_json(c)},
                {"origin", majorant::to_json(*origin_)}};
    std::string first;
    if (!c.pass) first = c.failure;
    else if (!origin_->pass) first = "bounds at the origin";
    set(r, first.empty(), first);
  }

  void complex(CheckResult& r) {
    if (!origin_) throw std::logic_error("majorant-complex ran before majorant-real");
    const majorant::MajorantProblem p = majorant::build_sector_problem(cfg_.claims, &*origin_);
    const majorant::MajorantCertificate c = majorant::verify_majorant(p, majorant::sector_partition());
    const majorant::SectorConclusion s = majorant::conclude_sector(c, cfg_.claims);
    r.report = {{"problem", majorant::to_json(p)}, {"certificate", majorant::to_json(c)},
                {"sector", majorant::to_json(s)}};
    std::string first;
    if (!c.pass) first = c.failure;
    else if (!s.pass) first = "y_2 maximum";
    set(r, first.empty(), first);
  }

  Config cfg_;
  std::optional<majorant::OriginBounds> origin_;
};

inline nlohmann::json to_json(const SuiteReport& rep) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : rep.checks) {
    nlohmann::json j{{"name", c.name},
                     {"depends_on", c.depends_on},
                     {"level", c.level},
                     {"status", to_string(c.status)},
                     {"report", c.report}};
    if (!c.failure.empty()) j["failure"] = c.failure;
    checks.push_back(std::move(j));
  }
  nlohmann::json j{{"target", rep.target}, {"pass", rep.pass}, {"checks", checks}};
  if (!rep.pass) j["first_failure"] = rep.first_failure();
  return j;
}

/// Sets one claimed constant by name (failure injection). Returns false for
/// an unknown name.
inline bool override_claim(Config& cfg, const std::string& name, const Rational& v) {
  auto& t = cfg.targets;
  auto& c = cfg.claims;
  const std::pair<const char*, Rational*> table[] = {
      {"hp_ball", &t.hp_ball},       {"hp_source", &t.hp_source},   {"hp_lambda", &t.hp_lambda},
      {"d1_ball", &t.d1_ball},       {"d1_source", &t.d1_source},   {"d1_lambda", &t.d1_lambda},
      {"d2_ball", &t.d2_ball},       {"d2_source", &t.d2_source},   {"d2_lambda", &t.d2_lambda},
      {"d2_deriv", &t.d2_deriv},     {"hb_abs", &t.hb_abs},         {"r3", &c.r3},
      {"x3_value", &c.x3_value},     {"x3_deriv", &c.x3_deriv},     {"real_ic_value", &c.real_ic_value},
      {"real_ic_deriv", &c.real_ic_deriv}, {"origin_value", &c.origin_value}, {"origin_deriv", &c.origin_deriv},
      {"r4_sq", &c.r4_sq},           {"r4", &c.r4},                 {"yb2_sq", &c.yb2_sq},
      {"yb2", &c.yb2},               {"yb1_sq", &c.yb1_sq},         {"yb1", &c.yb1},
      {"y2_max", &c.y2_max}};
  for (const auto& [n, p] : table)
    if (name == n) {
      *p = v;
      return true;
    }
  return false;
}

}  // namespace hm::suite
