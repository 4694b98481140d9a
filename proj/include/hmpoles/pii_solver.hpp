#pragma once
/**
 * @file pii_solver.hpp
 * @brief Floating-point integration of y'' = 2y^3 + xy in the complex plane
 *        for the Hastings-McLeod solution, with pole passing and pole scans.
 *
 * Paths are polylines; each segment is integrated in its arc-length parameter
 * with an adaptive Runge-Kutta-Fehlberg 7(8) pair. Where |y| exceeds a switch
 * threshold the state moves to w = 1/y, which obeys
 *   w'' = 2 (w'^2 - 1) / w - x w,
 * regular through the simple poles of y (w' = +-1 there). Poles predicted to
 * lie close to the path are circumvented on a polygonal circle; the solution
 * is single-valued so the detour does not change the continuation.
 */

#include "parallel.hpp"
#include "quasisol.hpp"

#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hm::solver {

using cplx = std::complex<double>;
/// Integration runs in extended precision: outward rays in the left sectors
/// amplify rounding errors by about exp((2 sqrt2 / 3) |x|^{3/2}).
using real = long double;
using lcplx = std::complex<real>;

struct SolverConfig {
  double rel_tol = 1e-17;
  double abs_tol = 1e-22;
  /// The 7(8) error estimate is unreliable for this problem; the cap keeps the
  /// true error near the tolerance.
  double max_step = 0.01;
  /// Switch to w = 1/y when |y| > y_switch, back when |y| < y_switch.
  double y_switch = 10.0;
  /// Abscissa where the Airy seed is taken.
  double x_start = 11.0;
  /// Constant step (no error control) when positive.
  double fixed_step = 0.0;
  /// Poles predicted within this distance of the path are circumvented.
  double vault_radius = 0.15;
  /// Pole predictions are only trusted within this distance.
  double predict_range = 0.6;

  void validate() const {
    if (!(rel_tol > 0 && abs_tol > 0)) throw std::invalid_argument("tolerances must be positive");
    if (!(y_switch > 1)) throw std::invalid_argument("y_switch must exceed 1");
    if (!(max_step > 0)) throw std::invalid_argument("max_step must be positive");
  }
};

enum class Mode { Direct, Inverted };

struct Sample {
  cplx x, y, dy;
  Mode mode = Mode::Direct;
  cplx w, dw;  ///< 1/y and its derivative; meaningful in inverted mode
};

struct Pole {
  cplx x;
  int residue = 0;          ///< +1, -1, or 0 when the slope was ambiguous
  double confidence = 0.0;  ///< radius within which the pole is located
};

struct SolutionTrace {
  std::vector<Sample> samples;
  std::vector<std::size_t> switches;  ///< sample indices where the mode changed
  std::vector<Pole> poles;            ///< poles detected near the path
  std::vector<std::string> diagnostics;
  bool truncated = false;
  /// Final state at full working precision.
  lcplx end_y, end_dy;

  const Sample& back() const { return samples.back(); }
};

/// Residue sign from w' at a zero of w = 1/y; 0 if |w'| is not near 1.
inline int residue_sign_from_slope(cplx dw, double tol = 0.1) {
  if (std::abs(std::abs(dw) - 1.0) > tol || std::abs(dw.imag()) > tol) return 0;
  return dw.real() > 0 ? 1 : -1;
}

/// Residue sign of the pole at p read off the trace sample nearest to it.
inline int residue_sign(cplx p, const SolutionTrace& trace) {
  const Sample* best = nullptr;
  for (const auto& s : trace.samples)
    if (!best || std::abs(s.x - p) < std::abs(best->x - p)) best = &s;
  if (!best) return 0;
  const cplx dw = best->mode == Mode::Inverted ? best->dw : -best->dy / (best->y * best->y);
  return residue_sign_from_slope(dw);
}

// ---------------------------------------------------------------------------
// Seeds.

struct Seed {
  cplx x;
  lcplx y, dy;
  double radius_y = 0.0, radius_dy = 0.0;
};

/// y_HM(x0) from the right-hand quasi-solution with the envelopes
/// 9 e^{-t} / (640 sqrt(pi) x^{13/4}) and
/// 9 e^{-t} (188 x^{3/2} + 25) / (64000 sqrt(pi) x^{17/4}), t = (2/3) x^{3/2}.
inline Seed hm_seed(double x0) {
  if (!(x0 >= 3.0)) throw std::domain_error("hm_seed: requires x0 >= 3");
  const double t = 2.0 / 3.0 * std::pow(x0, 1.5), sx = std::sqrt(x0);
  const double e = std::exp(-t), sp = std::sqrt(M_PI);
  const double pref = e / (2.0 * sp * std::pow(x0, 0.25));
  const quasi::ExpTermSum hb = quasi::build_hb();
  const double h = hb.eval(t).real(), dh = hb.derivative().eval(t).real();
  Seed s;
  s.x = x0;
  s.y = real(pref * h);
  s.dy = real(pref * (-sx * h - h / (4.0 * x0) + sx * dh));
  s.radius_y = 9.0 * e / (640.0 * sp * std::pow(x0, 3.25));
  s.radius_dy = 9.0 * e * (188.0 * std::pow(x0, 1.5) + 25.0) / (64000.0 * sp * std::pow(x0, 4.25));
  return s;
}

/// Ai(x0), Ai'(x0); the Hastings-McLeod solution differs by O(Ai^3), below
/// working precision relative to Ai for x0 >= 11.
inline Seed airy_seed(double x0) {
  Seed s;
  s.x = x0;
  s.y = boost::math::airy_ai(real(x0));
  s.dy = boost::math::airy_ai_prime(real(x0));
  return s;
}

// ---------------------------------------------------------------------------
// Integrator.

namespace detail {

using State = std::array<lcplx, 2>;

/// Perpendicular distance from p to the line through a with unit direction
/// e, and the arc parameter of the foot point.
inline std::pair<real, real> project(lcplx p, lcplx a, lcplx e) {
  const lcplx r = (p - a) / e;
  return {std::abs(r.imag()), r.real()};
}

class Walker {
 public:
  Walker(const SolverConfig& cfg, SolutionTrace& trace, std::function<double(cplx)> detect_radius)
      : cfg_(cfg), trace_(trace), detect_radius_(std::move(detect_radius)) {}

  void start(cplx x, lcplx y, lcplx dy) {
    x_ = lcplx(x);
    mode_ = Mode::Direct;
    u_ = {y, dy};
    if (std::abs(y) > cfg_.y_switch) to_inverted();
    record();
  }

  bool failed() const { return trace_.truncated; }

  /// Integrates along the polyline through `pts` (the first point is the current position).
  void follow(const std::vector<cplx>& pts) {
    for (std::size_t i = 1; i < pts.size() && !failed(); ++i) segment(lcplx(pts[i]));
  }

  /// Straight segment to `to`, circumventing close poles.
  void segment(lcplx to, bool allow_vault = true) {
    while (!failed()) {
      const lcplx d = to - x_;
      const real len = std::abs(d);
      if (len < 1e-14) return;
      const lcplx e = d / len;
      const lcplx a = x_;
      bool vaulted = false;
      advance(a, e, len, [&](lcplx xp, real s_now) {
        if (!allow_vault) return false;
        auto [dist, sp] = project(xp, x_, e);
        if (dist < cfg_.vault_radius && sp > 0 && sp < len - s_now + cfg_.vault_radius) {
          vaulted = true;
          return true;  // stop here, detour below
        }
        return false;
      });
      if (!vaulted || failed()) return;
      if (vault(to)) return;
    }
  }

 private:
  /// Straight integration from a along e for length len. `stop(xp, s)` is
  /// offered every pole prediction and may end the segment early.
  template <class Stop>
  void advance(lcplx a, lcplx e, real len, Stop&& stop) {
    real s = 0, ds = cfg_.fixed_step > 0 ? cfg_.fixed_step : std::min(cfg_.max_step, 0.01);
    auto rhs = [&](const State& u, State& du, real t) {
      const lcplx x = a + e * t;
      du[0] = e * u[1];
      if (mode_ == Mode::Direct) du[1] = e * (real(2) * u[0] * u[0] * u[0] + x * u[0]);
      else du[1] = e * (real(2) * (u[1] * u[1] - real(1)) / u[0] - x * u[0]);
    };
    namespace odeint = boost::numeric::odeint;
    using Stepper = odeint::runge_kutta_fehlberg78<State, real, State, real>;
    auto ctrl = odeint::make_controlled(real(cfg_.abs_tol), real(cfg_.rel_tol), Stepper());
    Stepper plain;
    while (len - s > 1e-14) {
      const real prev_s = s;
      if (cfg_.fixed_step > 0) {
        real h = std::min(real(cfg_.fixed_step), len - s);
        plain.do_step(rhs, u_, s, h);
        s += h;
      } else {
        ds = std::min({ds, real(cfg_.max_step), len - s});
        if (ds < 1e-13) {
          trace_.diagnostics.push_back("step size underflow near x = " + format(a + e * s));
          trace_.truncated = true;
          return;
        }
        if (ctrl.try_step(rhs, u_, s, ds) != odeint::success) continue;
      }
      x_ = s >= len - 1e-14 ? a + e * len : a + e * s;
      if (!std::isfinite(std::abs(u_[0])) || !std::isfinite(std::abs(u_[1]))) {
        trace_.diagnostics.push_back("non-finite state near x = " + format(x_));
        trace_.truncated = true;
        return;
      }
      check_switch();
      record();
      if (auto xp = predict()) {
        maybe_detect(*xp, a, e, prev_s, s);
        if (stop(*xp, s)) return;
      }
    }
  }

  /// Circle around the predicted pole, radius = current distance, leaving
  /// where the circle meets the remaining straight path. Returns true when
  /// the segment end has been reached.
  bool vault(lcplx to) {
    const lcplx xp = *predict();
    const real len = std::abs(to - x_);
    const lcplx e = (to - x_) / len;
    const real rho = std::abs(x_ - xp);
    auto [dist, sp] = project(xp, x_, e);
    const real s_exit = sp + std::sqrt(std::max(rho * rho - dist * dist, real(0)));
    const lcplx exit = x_ + e * s_exit;
    const real a0 = std::arg(x_ - xp);
    real sweep = std::arg(exit - xp) - a0;
    while (sweep <= -M_PI) sweep += 2 * M_PI;
    while (sweep > M_PI) sweep -= 2 * M_PI;
    if (std::abs(sweep) < 1e-9) sweep = M_PI;
    const int n = 16;
    for (int k = 1; k <= n && !failed(); ++k) {
      const lcplx p = xp + rho * std::polar(real(1), a0 + sweep * k / n);
      const lcplx d = p - x_;
      advance(x_, d / std::abs(d), std::abs(d), [](lcplx, real) { return false; });
    }
    if (failed()) return true;
    polish_and_record(xp);
    if (s_exit >= len) {
      // The end point lies inside the circle.
      segment(to, false);
      return true;
    }
    return false;
  }

  std::optional<lcplx> predict() const {
    lcplx xp;
    if (mode_ == Mode::Inverted) {
      if (std::abs(u_[1]) < 1e-300) return std::nullopt;
      xp = x_ - u_[0] / u_[1];
    } else {
      if (std::abs(u_[0]) < 1.5 || std::abs(u_[1]) < 1e-300) return std::nullopt;
      xp = x_ + u_[0] / u_[1];
    }
    if (std::abs(xp - x_) > cfg_.predict_range) return std::nullopt;
    return xp;
  }

  /// Records a pole passed at its closest approach if it lies within the
  /// detection radius of the path.
  void maybe_detect(lcplx xp, lcplx a, lcplx e, real s0, real s1) {
    if (!detect_radius_) return;
    auto [dist, sp] = project(xp, a, e);
    if (sp <= s0 || sp > s1) return;
    if (dist > detect_radius_(cplx(xp))) return;
    polish_and_record(xp);
  }

  /// Newton refinement of a zero of w using short straight integrations
  /// from a copy of the current state toward the estimate.
  void polish_and_record(lcplx guess) {
    if (!detect_radius_) return;
    Walker probe(cfg_, scratch_, {});
    probe.x_ = x_;
    probe.u_ = u_;
    probe.mode_ = mode_;
    if (probe.mode_ == Mode::Direct) probe.to_inverted();
    lcplx target = guess;
    real last = 1;
    for (int it = 0; it < 14; ++it) {
      const real d = std::abs(probe.x_ - target);
      const real rho = std::max(std::min(d / 8, real(1e-2)), real(1e-4));
      if (d > rho) {
        const lcplx z = target + (probe.x_ - target) * (rho / d);
        const lcplx dir = (z - probe.x_) / std::abs(z - probe.x_);
        probe.force_inverted_ = true;
        probe.advance(probe.x_, dir, std::abs(z - probe.x_), [](lcplx, real) { return false; });
        if (probe.failed()) break;
      }
      const lcplx next = probe.x_ - probe.u_[0] / probe.u_[1];
      last = std::abs(next - target);
      target = next;
      if (last < 1e-15 && std::abs(probe.x_ - target) <= 2e-4) break;
    }
    const bool bad = probe.failed();
    scratch_ = {};
    if (bad) return;
    for (const auto& p : trace_.poles)
      if (std::abs(lcplx(p.x) - target) < 1e-6) return;
    Pole p;
    p.x = cplx(target);
    p.residue = residue_sign_from_slope(cplx(probe.u_[1]));
    p.confidence = std::max(10.0 * static_cast<double>(last), 1e-12);
    trace_.poles.push_back(p);
  }

  void to_inverted() {
    mode_ = Mode::Inverted;
    const lcplx w = real(1) / u_[0];
    u_ = {w, -u_[1] * w * w};
  }
  void to_direct() {
    mode_ = Mode::Direct;
    const lcplx y = real(1) / u_[0];
    u_ = {y, -u_[1] * y * y};
  }
  void check_switch() {
    if (force_inverted_) return;
    const Mode before = mode_;
    if (mode_ == Mode::Direct && std::abs(u_[0]) > cfg_.y_switch) to_inverted();
    else if (mode_ == Mode::Inverted && std::abs(u_[0]) * cfg_.y_switch > 1.0) to_direct();
    if (mode_ != before) switched_ = true;
  }

  void record() {
    Sample s;
    s.x = cplx(x_);
    s.mode = mode_;
    const lcplx inv = real(1) / u_[0], dinv = -u_[1] * inv * inv;
    if (mode_ == Mode::Direct) {
      s.y = cplx(u_[0]);
      s.dy = cplx(u_[1]);
      s.w = cplx(inv);
      s.dw = cplx(dinv);
    } else {
      s.w = cplx(u_[0]);
      s.dw = cplx(u_[1]);
      s.y = cplx(inv);
      s.dy = cplx(dinv);
    }
    if (mode_ == Mode::Direct) {
      trace_.end_y = u_[0];
      trace_.end_dy = u_[1];
    } else {
      trace_.end_y = inv;
      trace_.end_dy = dinv;
    }
    if (switched_) {
      trace_.switches.push_back(trace_.samples.size());
      switched_ = false;
    }
    trace_.samples.push_back(s);
  }

  static std::string format(lcplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g%+.6gi", static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return buf;
  }

  const SolverConfig& cfg_;
  SolutionTrace& trace_;
  SolutionTrace scratch_;
  std::function<double(cplx)> detect_radius_;
  lcplx x_;
  State u_{};
  Mode mode_ = Mode::Direct;
  bool switched_ = false;
  bool force_inverted_ = false;
};

}  // namespace detail

/// Integrates from the seed along the polyline `path` (path[0] must be the
/// seed abscissa). With `detect_radius`, poles passed within that distance
/// are polished and listed in the trace.
inline SolutionTrace integrate_path(const Seed& seed, const std::vector<cplx>& path, const SolverConfig& cfg = {},
                                    std::function<double(cplx)> detect_radius = {}) {
  cfg.validate();
  if (!std::isfinite(std::abs(seed.y)) || !std::isfinite(std::abs(seed.dy)))
    throw std::invalid_argument("integrate_path: seed not finite");
  if (!path.empty() && std::abs(path.front() - seed.x) > 1e-12)
    throw std::invalid_argument("integrate_path: path must start at the seed");
  SolutionTrace trace;
  detail::Walker walker(cfg, trace, std::move(detect_radius));
  walker.start(seed.x, seed.y, seed.dy);
  if (path.size() > 1) walker.follow(path);
  return trace;
}

/// y_HM and y_HM' at the origin, by integrating the Airy seed down the real axis.
inline Seed origin_values(const SolverConfig& cfg = {}) {
  const Seed s = airy_seed(cfg.x_start);
  const SolutionTrace t = integrate_path(s, {s.x, 0.0}, cfg);
  if (t.truncated) throw std::runtime_error("origin_values: integration failed");
  return {0.0, t.end_y, t.end_dy};
}

// ---------------------------------------------------------------------------
// Pole scans.

/// Scan region: the part of the disc |x| <= rmax with theta0 <= arg x <= theta1
/// (radians, theta1 - theta0 <= 2 pi), intersected with an optional rectangle.
struct ScanRegion {
  double rmax = 9.0;
  double theta0 = -M_PI, theta1 = M_PI;
  std::optional<std::array<double, 4>> rect;  ///< re_min, re_max, im_min, im_max

  bool contains(cplx x) const {
    if (std::abs(x) > rmax) return false;
    if (rect) {
      const auto& r = *rect;
      if (x.real() < r[0] || x.real() > r[1] || x.imag() < r[2] || x.imag() > r[3]) return false;
    }
    if (theta1 - theta0 >= 2 * M_PI - 1e-15) return true;
    double a = std::arg(x);
    while (a < theta0) a += 2 * M_PI;
    return a <= theta1;
  }

  bool empty() const {
    if (rect) {
      const auto& r = *rect;
      if (!(r[0] < r[1] && r[2] < r[3])) return true;
    }
    return !(rmax > 0) || !(theta1 > theta0);
  }
};

struct PoleSet {
  std::vector<Pole> poles;
  std::vector<std::string> diagnostics;
  int rays = 0;
};

/// Index k of the sector k pi/3 < arg x < (k+1) pi/3, arg in [0, 2 pi).
inline int sector_index(cplx x) {
  double a = std::arg(x);
  if (a < 0) a += 2 * M_PI;
  int k = static_cast<int>(std::floor(a / (M_PI / 3)));
  return std::clamp(k, 0, 5);
}

inline std::array<int, 6> sector_counts(const PoleSet& s) {
  std::array<int, 6> c{};
  for (const auto& p : s.poles) ++c[static_cast<std::size_t>(sector_index(p.x))];
  return c;
}

/// Ray angles 2 pi k / n covering the region's angular range with one ray of
/// padding on each side.
inline std::vector<double> ray_angles(const ScanRegion& region, int n) {
  std::vector<double> out;
  if (region.empty() || n <= 0) return out;
  const double step = 2 * M_PI / n;
  const bool full = region.theta1 - region.theta0 >= 2 * M_PI - 1e-15;
  for (int k = 0; k < n; ++k) {
    double a = -M_PI + step * k;
    if (full) {
      out.push_back(a);
      continue;
    }
    double rel = a - region.theta0;
    while (rel < -step) rel += 2 * M_PI;
    while (rel >= 2 * M_PI - step) rel -= 2 * M_PI;
    if (rel >= -step && rel <= region.theta1 - region.theta0 + step) out.push_back(a);
  }
  return out;
}

/// Integrates y_HM along radial rays and collects poles near them. Rays with
/// |arg x| <= pi/3 start from the Airy seed on the positive axis, run along
/// the circle of radius max(x_start, rmax + 1/2) and then inward, which is
/// the stable direction there; all other rays run outward from the origin.
inline PoleSet scan_poles(const ScanRegion& region, int grid, const SolverConfig& cfg = {}) {
  cfg.validate();
  PoleSet out;
  const std::vector<double> angles = ray_angles(region, grid);
  out.rays = static_cast<int>(angles.size());
  if (angles.empty()) return out;
  const double reach = region.rmax + 0.5, step = 2 * M_PI / grid;
  const double r_arc = std::max(cfg.x_start, reach);
  const Seed origin = origin_values(cfg);
  const Seed far = airy_seed(r_arc);
  // A pole between two rays is seen from the nearer one.
  auto radius = [&](cplx x) { return std::min(0.6 * std::abs(x) * step + 1e-3, cfg.vault_radius); };

  std::vector<SolutionTrace> traces(angles.size());
  parallel_for(angles.size(), [&](std::size_t i) {
    const double th = angles[i];
    std::vector<cplx> path;
    Seed seed;
    if (std::abs(th) <= M_PI / 3 + 1e-12) {
      seed = far;
      const int n = std::max(2, static_cast<int>(std::ceil(std::abs(th) * r_arc / 0.05)));
      for (int k = 0; k <= n; ++k) path.push_back(std::polar(r_arc, th * k / n));
      path.push_back(0.0);
    } else {
      seed = origin;
      path = {0.0, std::polar(reach, th)};
    }
    traces[i] = integrate_path(seed, path, cfg, radius);
  });

  for (std::size_t i = 0; i < traces.size(); ++i) {
    for (const auto& d : traces[i].diagnostics) out.diagnostics.push_back("ray " + std::to_string(i) + ": " + d);
    for (const auto& p : traces[i].poles) {
      if (!region.contains(p.x)) continue;
      bool dup = false;
      for (auto& q : out.poles)
        if (std::abs(q.x - p.x) < std::max(1e-6, q.confidence + p.confidence)) {
          dup = true;
          if (p.confidence < q.confidence) q = p;
          break;
        }
      if (!dup) out.poles.push_back(p);
    }
  }
  std::sort(out.poles.begin(), out.poles.end(), [](const Pole& a, const Pole& b) {
    if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
    return a.x.imag() < b.x.imag();
  });
  return out;
}

// ---------------------------------------------------------------------------
// Output.

inline void write_csv(std::ostream& os, const PoleSet& s) {
  os << "re,im,residue_sign,confidence_radius\n";
  char buf[160];
  for (const auto& p : s.poles) {
    std::snprintf(buf, sizeof buf, "%.10f,%.10f,%d,%.3e\n", p.x.real(), p.x.imag(), p.residue, p.confidence);
    os << buf;
  }
}

/// Self-contained SVG scatter plot with the six rays arg x = k pi/3 dashed.
inline void write_svg(std::ostream& os, const PoleSet& s, const ScanRegion& region) {
  const double size = 640, half = size / 2, scale = (half - 20) / std::max(region.rmax, 1e-9);
  auto px = [&](cplx z) { return std::pair<double, double>{half + scale * z.real(), half - scale * z.imag()}; };
  char buf[256];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n";
  os << "<rect width=\"640\" height=\"640\" fill=\"white\"/>\n";
  std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"%.2f\" fill=\"none\" stroke=\"#bbb\"/>\n", half,
                half, scale * region.rmax);
  os << buf;
  for (int k = 0; k < 6; ++k) {
    auto [x1, y1] = px(std::polar(region.rmax, k * M_PI / 3));
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#888\" stroke-dasharray=\"6,4\"/>\n",
                  half, half, x1, y1);
    os << buf;
  }
  for (const auto& p : s.poles) {
    auto [x, y] = px(p.x);
    const char* colour = p.residue > 0 ? "#c0392b" : p.residue < 0 ? "#2c3e90" : "#555";
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"%s\"/>\n", x, y, colour);
    os << buf;
  }
  os << "</svg>\n";
}

}  // namespace hm::solver
