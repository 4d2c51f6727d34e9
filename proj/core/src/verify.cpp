#include "polyadd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "polyadd/errors.hpp"
#include "polyadd/polygamma.hpp"
#include "polyadd/rng.hpp"

namespace polyadd {
namespace {

constexpr double kDefaultLogLo = -4.605170185988091;  // ln 1e-2
constexpr double kDefaultLogHi = 4.605170185988092;   // ln 1e2

double rel_excess(double lhs, double rhs) {
  // Positive when lhs exceeds rhs, scaled so slack reads as a relative margin.
  return (lhs - rhs) / (std::abs(lhs) + std::abs(rhs) + 1e-300);
}

void note_margin(AdditivityReport& r, double x, double y, double margin) {
  r.worst_margin = std::max(r.worst_margin, margin);
  if (margin > r.slack) r.violations.push_back({x, y, margin});
}

AdditivityReport make_report(int i, Region region, const char* check, int samples,
                             double slack) {
  AdditivityReport r;
  r.order = i;
  r.region = region;
  r.check = check;
  r.samples = samples;
  r.slack = slack;
  r.worst_margin = -std::numeric_limits<double>::infinity();
  return r;
}

// Window for the x side of the sweeps that draw y themselves.
void x_window(const SampleSpec& spec, double& lo, double& hi) {
  lo = spec.has_range() ? spec.log_lo : kDefaultLogLo;
  hi = spec.has_range() ? spec.log_hi : kDefaultLogHi;
}

struct AttemptBudget {
  long left;
  explicit AttemptBudget(int count) : left(1000L * count + 1000L) {}
  void spend(const char* who) {
    if (--left < 0)
      throw ArgumentError(std::string(who) + ": sampling window rejects essentially every draw");
  }
};

}  // namespace

double deficit(int i, double x, double y, const EvalConfig& cfg) {
  const double a = std::min(x, y);
  const double b = std::max(x, y);
  return (abs_polygamma(i, a, cfg) + abs_polygamma(i, b, cfg)) -
         abs_polygamma(i, x * y, cfg);
}

double partial_x(int i, double x, double y, const EvalConfig& cfg) {
  return y * abs_polygamma(i + 1, x * y, cfg) - abs_polygamma(i + 1, x, cfg);
}

std::vector<double> make_log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ArgumentError("make_log_grid: need finite 0 < lo < hi");
  if (points < 2) throw ArgumentError("make_log_grid: need at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  g.front() = lo;
  g.back() = hi;
  for (int j = 1; j + 1 < points; ++j)
    g[static_cast<std::size_t>(j)] =
        std::exp(llo + (lhi - llo) * static_cast<double>(j) / (points - 1));
  return g;
}

MonotoneClass check_monotone_alpha(int i, double alpha, const std::vector<double>& grid,
                                   const EvalConfig& cfg) {
  if (!std::isfinite(alpha)) throw ArgumentError("check_monotone_alpha: alpha must be finite");
  if (grid.size() < 50)
    throw ArgumentError("check_monotone_alpha: grid must have at least 50 points");
  if (!(grid.front() <= 1e-2 * (1.0 + 1e-9)) || !(grid.back() >= 1e2 * (1.0 - 1e-9)))
    throw ArgumentError("check_monotone_alpha: grid must span [1e-2, 1e2]");
  for (std::size_t j = 1; j < grid.size(); ++j)
    if (!(grid[j] > grid[j - 1]))
      throw ArgumentError("check_monotone_alpha: grid must be strictly increasing");

  bool any_up = false;
  bool any_down = false;
  double prev = std::pow(grid[0], alpha) * abs_polygamma(i, grid[0], cfg);
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double cur = std::pow(grid[j], alpha) * abs_polygamma(i, grid[j], cfg);
    if (cur > prev) any_up = true;
    else if (cur < prev) any_down = true;
    else { any_up = any_down = true; }  // a flat step is evidence against both
    prev = cur;
  }
  if (any_up && !any_down) return MonotoneClass::INCREASING;
  if (any_down && !any_up) return MonotoneClass::DECREASING;
  return MonotoneClass::NON_MONOTONE;
}

std::array<double, 4> check_limit(int i, double y, const EvalConfig& cfg) {
  return {deficit(i, 10.0, y, cfg), deficit(i, 1e2, y, cfg), deficit(i, 1e3, y, cfg),
          deficit(i, 1e4, y, cfg)};
}

AdditivityReport check_case_inequalities(int i, const SampleSpec& samples,
                                         const EvalConfig& cfg, double slack) {
  samples.validate();
  cfg.validate();
  AdditivityReport r =
      make_report(i, samples.region, "case_inequalities", samples.count, slack);
  double xlo, xhi;
  x_window(samples, xlo, xhi);
  Sampler rng(samples.seed);
  const double ylo = std::log(1e-3);
  for (int n = 0; n < samples.count; ++n) {
    const double x = std::exp(rng.uniform(xlo, xhi));
    const double y = std::exp(rng.uniform(ylo, 0.0));  // [1e-3, 1), never 1
    const double f_xy = deficit(i, x, y, cfg);
    const double f_1y = deficit(i, 1.0, y, cfg);
    if (x > 1.0) {
      note_margin(r, x, y, rel_excess(f_1y, f_xy));                     // f(1,y) < f(x,y)
      note_margin(r, x, y, rel_excess(f_xy, abs_polygamma(i, y, cfg))); // f(x,y) < |psi(y)|
    } else if (x < 1.0) {
      note_margin(r, x, y, rel_excess(f_xy, f_1y));                     // f(x,y) < f(1,y)
      if (y < x)
        note_margin(r, x, y, rel_excess(deficit(i, y, y, cfg), f_xy)); // f(y,y) < f(x,y)
      else if (x < y)
        note_margin(r, x, y, rel_excess(deficit(i, x, x, cfg), f_xy)); // f(x,x) < f(x,y)
    }
  }
  return r;
}

AdditivityReport check_additivity(int i, const ThresholdResult& theta,
                                  const SampleSpec& samples, const EvalConfig& cfg,
                                  double slack) {
  if (theta.order != i)
    throw ArgumentError("check_additivity: threshold order does not match i");
  if (!theta.certified)
    throw ArgumentError(
        "check_additivity: threshold is not certified; probe hypotheses with "
        "check_additivity_on instead");
  const double boundary = std::log(theta.mid());
  const double width_t = std::log(theta.hi) - std::log(theta.lo);
  return check_additivity_on(i, samples.region, boundary, width_t, samples, cfg, slack);
}

AdditivityReport check_additivity_on(int i, Region region, double boundary_log_theta,
                                     double bracket_width, const SampleSpec& samples,
                                     const EvalConfig& cfg, double slack) {
  samples.validate();
  cfg.validate();
  if (!std::isfinite(boundary_log_theta) || std::abs(boundary_log_theta) > 300.0)
    throw ArgumentError("check_additivity_on: boundary out of range");
  if (!(bracket_width >= 0.0) || !std::isfinite(bracket_width))
    throw ArgumentError("check_additivity_on: bracket width must be finite and >= 0");

  const double clamp = 10.0 * bracket_width;
  const char* name = region == Region::SUB     ? "additivity_sub"
                     : region == Region::SUPER ? "additivity_super"
                                               : "additivity_mixed";
  AdditivityReport r = make_report(i, region, name, samples.count, slack);
  Sampler rng(samples.seed);
  AttemptBudget budget(samples.count);

  if (region == Region::SUB) {
    const double lo = std::max(samples.has_range() ? samples.log_lo
                                                   : boundary_log_theta + 1e-3,
                               boundary_log_theta + clamp);
    const double hi = samples.has_range() ? samples.log_hi : 5.0;
    if (!(lo < hi)) throw ArgumentError("check_additivity_on: empty SUB window");
    if (!(2.0 * hi > boundary_log_theta + clamp))
      throw ArgumentError("check_additivity_on: SUB window cannot satisfy closure");
    for (int n = 0; n < samples.count; ++n) {
      double tx, ty;
      do {
        budget.spend("check_additivity_on");
        tx = rng.uniform(lo, hi);
        ty = rng.uniform(lo, hi);
      } while (!(tx + ty > boundary_log_theta + clamp));
      const double fx = polygamma_exp(i, tx, cfg);
      const double fy = polygamma_exp(i, ty, cfg);
      const double fs = polygamma_exp(i, tx + ty, cfg);
      note_margin(r, std::exp(tx), std::exp(ty), (fs - fx - fy) / (fx + fy));
    }
    return r;
  }

  if (region == Region::SUPER) {
    const double lo = samples.has_range() ? samples.log_lo : -20.0;
    const double hi = std::min(samples.has_range() ? samples.log_hi
                                                   : boundary_log_theta - 1e-3,
                               boundary_log_theta - clamp);
    if (!(lo < hi)) throw ArgumentError("check_additivity_on: empty SUPER window");
    for (int n = 0; n < samples.count; ++n) {
      double tx, ty;
      do {
        budget.spend("check_additivity_on");
        tx = rng.uniform(lo, hi);
        ty = rng.uniform(lo, hi);
      } while (!(tx + ty < boundary_log_theta - clamp));
      const double fx = polygamma_exp(i, tx, cfg);
      const double fy = polygamma_exp(i, ty, cfg);
      const double fs = polygamma_exp(i, tx + ty, cfg);
      note_margin(r, std::exp(tx), std::exp(ty), (fx + fy - fs) / (fx + fy));
    }
    return r;
  }

  // MIXED: straddle the boundary, assert nothing, tally the deficit signs.
  const double lo = samples.has_range() ? samples.log_lo : boundary_log_theta - 1.0;
  const double hi = samples.has_range() ? samples.log_hi : boundary_log_theta + 1.0;
  if (!(lo < boundary_log_theta) || !(boundary_log_theta < hi))
    throw ArgumentError("check_additivity_on: MIXED window must straddle the boundary");
  for (int n = 0; n < samples.count; ++n) {
    const double tx = rng.uniform(lo, boundary_log_theta);
    const double ty = rng.uniform(boundary_log_theta, hi);
    const double fx = polygamma_exp(i, tx, cfg);
    const double fy = polygamma_exp(i, ty, cfg);
    const double fs = polygamma_exp(i, tx + ty, cfg);
    const double m = (fs - fx - fy) / (fx + fy);
    r.worst_margin = std::max(r.worst_margin, m);
    if (m > 0.0) ++r.sign_negative;       // deficit F(x)+F(y)-F(x+y) < 0
    else if (m < 0.0) ++r.sign_positive;
  }
  return r;
}

AdditivityReport check_derivative_sign(int i, const SampleSpec& samples,
                                       const EvalConfig& cfg) {
  samples.validate();
  cfg.validate();
  AdditivityReport r =
      make_report(i, samples.region, "derivative_sign_law", samples.count, 0.0);
  double xlo, xhi;
  x_window(samples, xlo, xhi);
  Sampler rng(samples.seed);
  AttemptBudget budget(samples.count);
  const double yspan = std::log(1e3);
  for (int n = 0; n < samples.count; ++n) {
    const double x = std::exp(rng.uniform(xlo, xhi));
    double y;
    do {
      budget.spend("check_derivative_sign");
      y = std::exp(rng.uniform(-yspan, yspan));
    } while (std::abs(y - 1.0) <= 1e-6);
    const double pd = partial_x(i, x, y, cfg);
    const bool ok = (y > 1.0) ? (pd < 0.0) : (pd > 0.0);
    note_margin(r, x, y, ok ? -1.0 : 1.0);
  }
  return r;
}

AdditivityReport check_derivative_fd(int i, const SampleSpec& samples,
                                     const EvalConfig& cfg, double fd_rel_tol) {
  samples.validate();
  cfg.validate();
  AdditivityReport r =
      make_report(i, samples.region, "derivative_fd_agreement", samples.count, fd_rel_tol);
  double xlo, xhi;
  x_window(samples, xlo, xhi);
  Sampler rng(samples.seed);
  AttemptBudget budget(samples.count);
  const double yspan = std::log(1e3);
  for (int n = 0; n < samples.count; ++n) {
    const double x = std::exp(rng.uniform(xlo, xhi));
    double ty;
    do {
      budget.spend("check_derivative_fd");
      ty = rng.uniform(-yspan, yspan);
    } while (std::abs(ty) < 0.02);
    const double y = std::exp(ty);
    const double pd = partial_x(i, x, y, cfg);
    // Skip the cancellation regime: the relative comparison divides by pd.
    const double scale =
        y * abs_polygamma(i + 1, x * y, cfg) + abs_polygamma(i + 1, x, cfg);
    if (!(std::abs(pd) > 1e-8 * scale)) continue;
    const double h = 1e-5 * x;
    const double x1 = x + h;
    const double x2 = x - h;
    // Difference only the x-dependent part of the deficit: the |psi^(i)(y)|
    // term is constant in x and would cancel analytically anyway, but in
    // floating point it can dwarf the difference and leave pure rounding.
    const double fd = ((abs_polygamma(i, x1, cfg) - abs_polygamma(i, x2, cfg)) -
                       (abs_polygamma(i, x1 * y, cfg) - abs_polygamma(i, x2 * y, cfg))) /
                      (x1 - x2);
    note_margin(r, x, y, std::abs(fd - pd) / std::abs(pd));
  }
  return r;
}

AdditivityReport check_positivity(int i, const SampleSpec& samples, const EvalConfig& cfg) {
  samples.validate();
  cfg.validate();
  AdditivityReport r =
      make_report(i, samples.region, "positivity_y_gt_1", samples.count, 0.0);
  double xlo, xhi;
  x_window(samples, xlo, xhi);
  Sampler rng(samples.seed);
  AttemptBudget budget(samples.count);
  const double yspan = std::log(1e2);
  for (int n = 0; n < samples.count; ++n) {
    const double x = std::exp(rng.uniform(xlo, xhi));
    double ty;
    do {
      budget.spend("check_positivity");
      ty = rng.uniform(0.0, yspan);
    } while (ty == 0.0);
    const double y = std::exp(ty);
    const double d = deficit(i, x, y, cfg);
    const double den = abs_polygamma(i, x, cfg) + abs_polygamma(i, y, cfg) + 1e-300;
    note_margin(r, x, y, -d / den);
  }
  return r;
}

}  // namespace polyadd
