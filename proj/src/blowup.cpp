#include "rodbreak/blowup.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "rodbreak/beta_gamma.hpp"
#include "rodbreak/roots.hpp"

namespace rodbreak {

namespace {

struct ScanSetup {
  std::function<double(double)> u, du;
  double lo = 0.0, hi = 1.0;
  std::size_t points = 4096;
  bool periodic = true;
  double s = 1.0;  // sign of gamma
  double beta = 0.0;
  double gamma = 1.0;
};

double golden_min_arg(const std::function<double(double)>& f, double lo, double hi) {
  return golden_max([&](double x) { return -f(x); }, lo, hi, 1e-12).first;
}

// Points where u changes sign (located to machine precision) on the scan grid.
std::vector<double> sign_changes(const ScanSetup& st, const std::vector<double>& xs, const std::vector<double>& us) {
  std::vector<double> roots;
  const std::size_t n = xs.size();
  const std::size_t last = st.periodic ? n : n - 1;
  const double h = (st.hi - st.lo) / static_cast<double>(st.periodic ? n : n - 1);
  for (std::size_t j = 0; j < last; ++j) {
    const double a = xs[j];
    const double ua = us[j];
    const double ub = (j + 1 < n) ? us[j + 1] : us[0];
    if (ua == 0.0) {
      roots.push_back(a);
    } else if ((ua < 0.0) != (ub < 0.0) && ub != 0.0) {
      const double b = a + h;
      const double fb = st.u(b);
      if ((ua < 0.0) != (fb < 0.0) && fb != 0.0) roots.push_back(bisect(st.u, a, b, 1e-15, 80));
    }
  }
  return roots;
}

BlowupVerdict scan_criterion(const ScanSetup& st) {
  BlowupVerdict v;
  v.gamma = st.gamma;
  v.beta_used = Extended::finite(st.beta);
  auto margin = [&](double x) { return st.s * st.du(x) + st.beta * std::abs(st.u(x)); };
  auto disc = [&](double x) {
    const double a = st.du(x), b = st.beta * st.u(x);
    return a * a - b * b;
  };
  const std::size_t n = st.points;
  const double h = (st.hi - st.lo) / static_cast<double>(st.periodic ? n : n - 1);
  std::vector<double> xs(n), us(n), ms(n);
  for (std::size_t j = 0; j < n; ++j) {
    xs[j] = st.lo + h * static_cast<double>(j);
    us[j] = st.u(xs[j]);
    ms[j] = st.s * st.du(xs[j]) + st.beta * std::abs(us[j]);
  }
  const auto jmin = static_cast<std::size_t>(std::min_element(ms.begin(), ms.end()) - ms.begin());
  auto clamp_x = [&](double x) { return st.periodic ? x : std::clamp(x, st.lo, st.hi); };
  double best_x = xs[jmin], best_m = ms[jmin];
  {
    const double x = golden_min_arg(margin, clamp_x(xs[jmin] - h), clamp_x(xs[jmin] + h));
    const double m = margin(x);
    if (m < best_m) best_x = x, best_m = m;
  }
  const std::vector<double> zeros = sign_changes(st, xs, us);
  for (double z : zeros) {
    const double m = margin(z);
    if (m < best_m) best_x = z, best_m = m;
  }
  auto wrap = [&](double x) { return st.periodic ? x - std::floor(x) : x; };
  v.margin = best_m;
  v.witness_x0 = wrap(best_x);
  if (best_m >= -kStrictnessTol) {
    v.status = best_m > kStrictnessTol ? VerdictStatus::not_triggered : VerdictStatus::boundary;
    if (v.status == VerdictStatus::boundary)
      v.notes.push_back("margin within 1e-9 of zero: equality case, inconclusive");
    return v;
  }
  v.status = VerdictStatus::triggered;
  v.triggered = true;
  // the lifespan bound uses the triggering point with the largest u0'^2 - beta^2 u0^2
  double dx = best_x, dbest = disc(best_x);
  std::size_t jd = n;
  double grid_best = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (ms[j] >= -kStrictnessTol) continue;
    const double d = disc(xs[j]);
    if (d > grid_best) grid_best = d, jd = j;
  }
  if (jd < n) {
    if (grid_best > dbest) dx = xs[jd], dbest = grid_best;
    const auto [xr, dr] = golden_max(disc, clamp_x(xs[jd] - h), clamp_x(xs[jd] + h), 1e-12);
    if (dr > dbest && margin(xr) < -kStrictnessTol) dx = xr, dbest = dr;
  }
  for (double z : zeros) {
    const double d = disc(z);
    if (d > dbest && margin(z) < -kStrictnessTol) dx = z, dbest = d;
  }
  v.tstar_bound = 2.0 / (std::abs(st.gamma) * std::sqrt(dbest));
  v.tstar_x0 = wrap(dx);
  return v;
}

}  // namespace

std::string to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::triggered:
      return "triggered";
    case VerdictStatus::not_triggered:
      return "not-triggered";
    case VerdictStatus::boundary:
      return "boundary-inconclusive";
    case VerdictStatus::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

BlowupVerdict check_blowup_periodic_with_beta(const InitialDatum& datum, double gamma, double beta, int grid) {
  if (gamma == 0.0)
    throw DomainError("gamma = 0 is the BBM case: all solutions are global and the blowup scenario never occurs");
  if (datum.domain() != DatumDomain::circle) throw DomainError("periodic criterion needs a circle datum");
  if (grid < 64) throw DomainError("criterion grid must have at least 64 points");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("beta must be finite and nonnegative");
  ScanSetup st;
  st.u = [&](double x) { return datum.value(x); };
  st.du = [&](double x) { return datum.derivative(x); };
  st.points = static_cast<std::size_t>(grid);
  st.s = gamma > 0.0 ? 1.0 : -1.0;
  st.beta = beta;
  st.gamma = gamma;
  BlowupVerdict v = scan_criterion(st);
  if (std::abs(gamma - 3.0) < 1e-12) {
    const std::size_t n = st.points;
    double inf_du = std::numeric_limits<double>::infinity();
    std::size_t jm = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double d = datum.derivative(static_cast<double>(j) / static_cast<double>(n));
      if (d < inf_du) inf_du = d, jm = j;
    }
    const double h = 1.0 / static_cast<double>(n);
    const double xr = golden_min_arg(st.du, jm * h - h, jm * h + h);
    inf_du = std::min(inf_du, datum.derivative(xr));
    if (inf_du < 0.0) v.gamma3_display_bound = 2.0 / 3.0 * std::sqrt(-inf_du);
  }
  for (const auto& w : datum.warnings()) v.notes.push_back(w);
  return v;
}

BlowupVerdict check_blowup_periodic(const InitialDatum& datum, double gamma, int grid) {
  const BetaGammaResult bg = compute_beta_gamma(gamma);
  if (!bg.beta_gamma.is_finite()) {
    BlowupVerdict v;
    v.gamma = gamma;
    v.status = VerdictStatus::not_applicable;
    v.notes.push_back("beta_gamma is +inf for this gamma: the criterion does not apply");
    return v;
  }
  return check_blowup_periodic_with_beta(datum, gamma, bg.beta_gamma.value(), grid);
}

BlowupVerdict check_blowup_line(const InitialDatum& datum, double gamma) {
  if (datum.domain() != DatumDomain::line) throw DomainError("line criterion needs a line datum");
  const Extended beta = beta_gamma_nonperiodic(gamma);
  if (!beta.is_finite()) {
    BlowupVerdict v;
    v.gamma = gamma;
    v.status = VerdictStatus::not_applicable;
    v.notes.push_back("the line criterion needs 1 <= gamma <= 4");
    return v;
  }
  double w = 10.0;
  while (w < 1e4 && (std::abs(datum.value(w)) >= 1e-10 || std::abs(datum.value(-w)) >= 1e-10)) w *= 2.0;
  ScanSetup st;
  st.u = [&](double x) { return datum.value(x); };
  st.du = [&](double x) { return datum.derivative(x); };
  st.lo = -w;
  st.hi = w;
  st.periodic = false;
  st.points = static_cast<std::size_t>(std::ceil(2.0 * w / 1e-3)) + 1;
  st.s = 1.0;
  st.beta = beta.value();
  st.gamma = gamma;
  BlowupVerdict v = scan_criterion(st);
  if (w >= 1e4) v.notes.push_back("datum does not decay below 1e-10 within |x| <= 1e4");
  return v;
}

ComparisonOutcome comparison_lemma_harness(double f0, double g0, double c, const FgRhs& rhs,
                                           const ComparisonOptions& opt) {
  if (!(f0 > 0.0 && g0 > 0.0 && c > 0.0)) throw DomainError("comparison harness needs f0, g0, c > 0");
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 2>;
  ComparisonOutcome out;
  out.bound = 1.0 / (c * std::sqrt(f0 * g0));
  auto system = [&](const State& x, State& dxdt, double t) {
    const auto [df, dg] = rhs(t, x[0], x[1]);
    dxdt = {df, dg};
  };
  auto stepper = odeint::make_controlled(opt.abs_tol, opt.rel_tol, odeint::runge_kutta_dopri5<State>());
  State x{f0, g0};
  double t = 0.0;
  double dt = 1e-3 * out.bound;
  const double horizon = opt.horizon * out.bound;
  while (t < horizon) {
    const State x_prev = x;
    const double t_prev = t;
    const double dt_prev = dt;
    if (stepper.try_step(system, x, t, dt) != odeint::success) continue;
    if (!std::isfinite(x[0]) || !std::isfinite(x[1])) {
      x = x_prev;
      t = t_prev;
      dt = 0.25 * dt_prev;
      continue;
    }
    ++out.steps;
    const auto [df, dg] = rhs(t, x[0], x[1]);
    const double cfg = c * x[0] * x[1];
    const double slack = 1e-12 * std::max(1.0, std::abs(cfg));
    if (df < cfg - slack || dg < cfg - slack) out.dominance_held = false;
    if (std::abs(x[0]) + std::abs(x[1]) > opt.cap) {
      out.diverged = true;
      out.blowup_time = t;
      return out;
    }
  }
  out.blowup_time = t;
  return out;
}

ContinuityReport unique_continuation_check(const std::vector<GridFunction>& frames, double gamma) {
  const BetaGammaResult bg = compute_beta_gamma(gamma);
  if (!bg.beta_gamma.is_finite()) {
    ContinuityReport r;
    r.gamma = gamma;
    r.beta = std::numeric_limits<double>::infinity();
    r.notes.push_back("beta_gamma is +inf for this gamma: no monotonicity constraint applies");
    return r;
  }
  return unique_continuation_check(frames, gamma, bg.beta_gamma.value());
}

ContinuityReport unique_continuation_check(const std::vector<GridFunction>& frames, double gamma, double beta) {
  if (gamma == 0.0) throw DomainError("gamma = 0: no monotonicity constraint for global solutions");
  ContinuityReport report;
  report.gamma = gamma;
  report.beta = beta;
  const double dir = gamma > 0.0 ? 1.0 : -1.0;
  for (std::size_t fi = 0; fi < frames.size(); ++fi) {
    const GridFunction& u = frames[fi];
    const std::size_t n = u.size();
    FrameContinuity fc;
    fc.frame = fi;
    const double umax = u.max_abs();
    if (umax == 0.0) {
      fc.identically_zero = true;
      report.frames.push_back(fc);
      continue;
    }
    const double tol = 1e-6 * umax;
    for (std::size_t j = 0; j < n; ++j) {
      const double a = u[j], b = u[(j + 1) % n];
      if (a == 0.0 || (a < 0.0) != (b < 0.0)) fc.vanishes_somewhere = true;
    }
    for (int sign : {1, -1}) {
      auto in_run = [&](std::size_t j) { return sign > 0 ? u[j % n] >= -tol : u[j % n] <= tol; };
      std::vector<std::pair<std::size_t, std::size_t>> runs;
      std::size_t count = 0;
      for (std::size_t j = 0; j < n; ++j) count += in_run(j) ? 1 : 0;
      if (count == n) {
        runs.emplace_back(0, n);
      } else if (count > 0) {
        for (std::size_t j = 0; j < n; ++j) {
          if (!in_run(j) || in_run(j + n - 1)) continue;
          std::size_t len = 0;
          while (len < n && in_run(j + len)) ++len;
          runs.emplace_back(j, len);
        }
      }
      const double e = sign > 0 ? dir * beta : -dir * beta;
      for (const auto& [first, len] : runs) {
        SignInterval si{first, len, sign, true, std::nullopt};
        for (std::size_t i = 0; i + 1 < len; ++i) {
          const double x0 = static_cast<double>(first + i) / static_cast<double>(n);
          const double x1 = static_cast<double>(first + i + 1) / static_cast<double>(n);
          const double h0 = std::exp(e * x0) * u[(first + i) % n];
          const double h1 = std::exp(e * x1) * u[(first + i + 1) % n];
          const double slack = tol * std::max(std::exp(e * x0), std::exp(e * x1));
          if (dir * (h1 - h0) < -slack) {
            si.monotone = false;
            if (!si.violation_x) si.violation_x = x0 - std::floor(x0);
            ++fc.violations;
          }
        }
        fc.intervals.push_back(si);
      }
    }
    report.total_violations += fc.violations;
    if (fc.violations > 0 || fc.vanishes_somewhere) report.contradiction = true;
    report.frames.push_back(std::move(fc));
  }
  if (report.contradiction)
    report.notes.push_back(
        "some frame vanishes without vanishing identically or breaks the monotonicity of e^{+-beta x}u: "
        "such a solution cannot be global");
  return report;
}

bool decay_blowup_test_line(const InitialDatum& datum, double gamma) {
  if (datum.domain() != DatumDomain::line) throw DomainError("decay test needs a line datum");
  const Extended beta = beta_gamma_nonperiodic(gamma);
  if (!beta.is_finite()) return false;
  const double b = beta.value();
  auto tail_max = [&](double X) {
    double m = 0.0;
    for (double x = X; x <= 200.0; x += 0.01) m = std::max({m, std::abs(datum.value(x)), std::abs(datum.value(-x))});
    return m;
  };
  const double overall = tail_max(0.0);
  if (overall == 0.0) return false;
  double prev = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (double X : {5.0, 10.0, 20.0}) {
    const double M = std::exp(b * X) * tail_max(X);
    if (M > prev) return false;
    prev = M;
    last = M;
  }
  return last <= 1e-8 * overall;
}

}  // namespace rodbreak
