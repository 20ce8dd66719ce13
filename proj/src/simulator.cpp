#include "rodbreak/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "rodbreak/common.hpp"

namespace rodbreak {

namespace {

constexpr double kSmoothSlope = 100.0;

struct Diagnostics {
  double energy = 0.0, min_slope = 0.0, min_slope_x = 0.0, max_abs_u = 0.0, max_abs_ux = 0.0, tail = 0.0;
};

Diagnostics diagnose(const Spectrum& c, RealFft& fft, double gamma, std::size_t kmax) {
  const std::size_t n = fft.size();
  Diagnostics d;
  d.energy = spectral_energy(c, n);
  Spectrum dc(c.size());
  for (std::size_t k = 1; k < c.size() && k < n / 2; ++k) dc[k] = std::complex<double>(0.0, angular(k)) * c[k];
  const std::vector<double> u = fft.inverse(c);
  const std::vector<double> ux = fft.inverse(dc);
  std::size_t jm = 0;
  for (std::size_t j = 0; j < n; ++j) {
    d.max_abs_u = std::max(d.max_abs_u, std::abs(u[j]));
    d.max_abs_ux = std::max(d.max_abs_ux, std::abs(ux[j]));
    if (gamma * ux[j] < gamma * ux[jm]) jm = j;
  }
  // parabolic refinement of the minimum of gamma u_x between grid points
  const double ym = gamma * ux[(jm + n - 1) % n], y0 = gamma * ux[jm], yp = gamma * ux[(jm + 1) % n];
  const double curv = ym - 2.0 * y0 + yp;
  double delta = 0.0, ymin = y0;
  if (curv > 0.0) {
    delta = std::clamp(0.5 * (ym - yp) / curv, -0.5, 0.5);
    ymin = y0 - 0.25 * (ym - yp) * delta;
  }
  d.min_slope = std::min(ymin, y0);
  const double x = (static_cast<double>(jm) + delta) / static_cast<double>(n);
  d.min_slope_x = x - std::floor(x);
  double all = 0.0, top = 0.0;
  for (std::size_t k = 1; k <= kmax && k < c.size(); ++k) {
    const double w = static_cast<double>(k) * std::abs(c[k]);
    all += w;
    if (3 * k > 2 * kmax) top += w;
  }
  d.tail = all > 0.0 ? top / all : 0.0;
  return d;
}

bool all_finite(const Spectrum& s) {
  return std::all_of(s.begin(), s.end(), [](const std::complex<double>& c) {
    return std::isfinite(c.real()) && std::isfinite(c.imag());
  });
}

Spectrum axpy(const Spectrum& x, double a, const Spectrum& y) {
  Spectrum out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] + a * y[k];
  return out;
}

Spectrum hermite(const HistoryFrame& a, const HistoryFrame& b, double s) {
  const double h = b.t - a.t;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  Spectrum c(a.u_hat.size());
  for (std::size_t k = 0; k < c.size(); ++k)
    c[k] = h00 * a.u_hat[k] + h10 * h * a.u_hat_t[k] + h01 * b.u_hat[k] + h11 * h * b.u_hat_t[k];
  return c;
}

}  // namespace

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::t_max:
      return "t-max";
    case StopReason::slope_stop:
      return "slope-stop";
    case StopReason::resolution_lost:
      return "resolution-lost";
    case StopReason::non_finite:
      return "non-finite";
  }
  return "unknown";
}

void SimConfig::validate() const {
  if (modes < 128 || !is_power_of_two(modes)) throw DomainError("modes must be a power of two >= 128");
  if (!(dt0 > 0.0)) throw DomainError("dt0 must be positive");
  if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw DomainError("cfl_safety must lie in (0, 1]");
  if (!(slope_stop > 0.0)) throw DomainError("slope_stop must be positive");
  if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw DomainError("t_max must be finite and nonnegative");
  if (!std::isfinite(gamma)) throw DomainError("gamma must be finite");
  if (samples_per_decade < 1) throw DomainError("samples_per_decade must be positive");
  if (max_history < 16) throw DomainError("max_history must be at least 16");
}

double spectral_energy(const Spectrum& u_hat, std::size_t n) {
  double e = std::norm(u_hat[0]);
  for (std::size_t k = 1; k < u_hat.size(); ++k) {
    const double w = (k == n / 2) ? 1.0 : 2.0;
    e += w * (1.0 + angular(k) * angular(k)) * std::norm(u_hat[k]);
  }
  return e;
}

RodSimulator::RodSimulator(SimConfig config, const GridFunction& u0) : config_(std::move(config)), fft_(config_.modes) {
  config_.validate();
  const std::size_t n = config_.modes;
  kmax_ = config_.dealias ? n / 3 : n / 2 - 1;
  RealFft src(u0.size());
  const Spectrum c = src.forward(u0.values());
  state_.u_hat.assign(n / 2 + 1, {0.0, 0.0});
  for (std::size_t k = 0; k < c.size() && k < u0.size() / 2 && k <= n / 2; ++k) state_.u_hat[k] = c[k];
  apply_mask(state_.u_hat);
  refresh_diagnostics();
}

RodSimulator::RodSimulator(SimConfig config, const InitialDatum& datum) : config_(std::move(config)), fft_(config_.modes) {
  config_.validate();
  if (datum.domain() != DatumDomain::circle) throw DomainError("the simulator only handles circle data");
  const std::size_t n = config_.modes;
  kmax_ = config_.dealias ? n / 3 : n / 2 - 1;
  if (datum.spectrum()) {
    state_.u_hat.assign(n / 2 + 1, {0.0, 0.0});
    const Spectrum& c = *datum.spectrum();
    for (std::size_t k = 0; k < c.size() && k <= n / 2; ++k) state_.u_hat[k] = c[k];
  } else {
    const GridFunction g = datum.sample(n);
    state_.u_hat = fft_.forward(g.values());
  }
  apply_mask(state_.u_hat);
  refresh_diagnostics();
}

void RodSimulator::apply_mask(Spectrum& s) const {
  for (std::size_t k = kmax_ + 1; k < s.size(); ++k) s[k] = 0.0;
}

void RodSimulator::refresh_diagnostics() {
  const Diagnostics d = diagnose(state_.u_hat, fft_, config_.gamma, kmax_);
  state_.energy = d.energy;
  state_.min_slope = d.min_slope;
  state_.min_slope_x = d.min_slope_x;
  state_.max_abs_u = d.max_abs_u;
  state_.tail_fraction = d.tail;
}

GridFunction RodSimulator::physical() const { return GridFunction(fft_.inverse(state_.u_hat)); }

Spectrum RodSimulator::rhs(const Spectrum& c) const {
  const std::size_t n = config_.modes;
  const double g = config_.gamma;
  Spectrum dc(c.size());
  for (std::size_t k = 1; k < c.size() && k < n / 2; ++k) dc[k] = std::complex<double>(0.0, angular(k)) * c[k];
  const std::vector<double> u = fft_.inverse(c);
  const std::vector<double> ux = fft_.inverse(dc);
  std::vector<double> adv(n), src(n);
  for (std::size_t j = 0; j < n; ++j) {
    adv[j] = g * u[j] * ux[j];
    src[j] = 0.5 * (3.0 - g) * u[j] * u[j] + 0.5 * g * ux[j] * ux[j];
  }
  const Spectrum a = fft_.forward(adv);
  const Spectrum b = fft_.forward(src);
  Spectrum out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double w = angular(k);
    out[k] = -a[k] - std::complex<double>(0.0, w / (1.0 + w * w)) * b[k];
  }
  out[n / 2] = 0.0;
  apply_mask(out);
  return out;
}

double RodSimulator::choose_dt() const {
  const double g = std::abs(config_.gamma);
  const double n = static_cast<double>(config_.modes);
  const double max_ux = std::abs(config_.gamma) > 0.0 ? std::abs(state_.min_slope) / g : 0.0;
  double dt = config_.dt0;
  const double speed = std::max({1.0, g * state_.max_abs_u * n, g * max_ux});
  dt = std::min(dt, config_.cfl_safety / speed);
  if (state_.min_slope < 0.0)
    dt = std::min(dt, 2.0 * std::log(10.0) / (config_.samples_per_decade * std::abs(state_.min_slope)));
  return dt;
}

void RodSimulator::step(double dt) {
  const Spectrum k1 = rhs(state_.u_hat);
  const Spectrum k2 = rhs(axpy(state_.u_hat, 0.5 * dt, k1));
  const Spectrum k3 = rhs(axpy(state_.u_hat, 0.5 * dt, k2));
  const Spectrum k4 = rhs(axpy(state_.u_hat, dt, k3));
  Spectrum next(state_.u_hat.size());
  for (std::size_t k = 0; k < next.size(); ++k)
    next[k] = state_.u_hat[k] + dt / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
  if (!all_finite(next)) throw NumericalError("integration failure: non-finite coefficients");
  state_.u_hat = std::move(next);
  state_.t += dt;
  refresh_diagnostics();
}

RunOutput RodSimulator::run() {
  RunOutput out;
  out.config = config_;
  out.initial = state_;
  const double e0 = state_.energy;
  std::size_t stride = 1, count = 0;
  auto row = [&](double dt) {
    out.series.push_back({state_.t, state_.energy, state_.min_slope, state_.min_slope_x, state_.max_abs_u, dt});
  };
  auto push_frame = [&](Spectrum ut) {
    out.history.push_back({state_.t, state_.u_hat, std::move(ut)});
    if (out.history.size() > config_.max_history) {
      std::vector<HistoryFrame> kept;
      for (std::size_t i = 0; i < out.history.size(); i += 2) kept.push_back(std::move(out.history[i]));
      out.history = std::move(kept);
      stride *= 2;
    }
  };
  row(0.0);
  for (;;) {
    std::optional<StopReason> stop;
    if (state_.t >= config_.t_max)
      stop = StopReason::t_max;
    else if (state_.min_slope < -config_.slope_stop)
      stop = StopReason::slope_stop;
    else if (config_.resolution_stop && state_.tail_fraction > config_.resolution_tol)
      stop = StopReason::resolution_lost;
    if (stop || count % stride == 0) {
      Spectrum ut = rhs(state_.u_hat);
      if (stop && !out.history.empty() && out.history.back().t == state_.t) out.history.pop_back();
      push_frame(std::move(ut));
    }
    if (stop) {
      out.reason = *stop;
      break;
    }
    const double dt = std::min(choose_dt(), config_.t_max - state_.t);
    try {
      step(dt);
    } catch (const NumericalError& e) {
      out.reason = StopReason::non_finite;
      out.notes.push_back(e.what());
      break;
    }
    ++count;
    row(dt);
    if (std::abs(state_.min_slope) / std::max(std::abs(config_.gamma), 1e-300) < kSmoothSlope || config_.gamma == 0.0)
      out.energy_drift_smooth = std::max(out.energy_drift_smooth, std::abs(state_.energy - e0) / e0);
  }
  out.final_state = state_;
  for (double x0 : config_.track)
    out.trajectories.push_back(integrate_flow_map(out.history, config_.modes, config_.gamma, x0));
  return out;
}

Trajectory integrate_flow_map(const std::vector<HistoryFrame>& history, std::size_t n, double gamma, double x0) {
  Trajectory tr;
  tr.x0 = x0;
  if (history.empty()) return tr;
  double q = x0;
  tr.t.push_back(history.front().t);
  tr.q.push_back(q);
  for (std::size_t i = 0; i + 1 < history.size(); ++i) {
    const HistoryFrame& a = history[i];
    const HistoryFrame& b = history[i + 1];
    const double h = b.t - a.t;
    const Spectrum mid = hermite(a, b, 0.5);
    auto vel = [&](const Spectrum& c, double x) { return gamma * eval_spectrum(c, n, x); };
    const double k1 = vel(a.u_hat, q);
    const double k2 = vel(mid, q + 0.5 * h * k1);
    const double k3 = vel(mid, q + 0.5 * h * k2);
    const double k4 = vel(b.u_hat, q + h * k3);
    q += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    tr.t.push_back(b.t);
    tr.q.push_back(q);
  }
  return tr;
}

std::vector<FgSample> monitor_fg(const std::vector<HistoryFrame>& history, std::size_t n, const Trajectory& traj,
                                 double beta) {
  if (traj.t.size() != history.size()) throw DomainError("trajectory does not match the history frames");
  std::vector<FgSample> out;
  out.reserve(history.size());
  for (std::size_t i = 0; i < history.size(); ++i) {
    const double q = traj.q[i];
    const double u = eval_spectrum(history[i].u_hat, n, q);
    const double ux = eval_spectrum_derivative(history[i].u_hat, n, q);
    out.push_back({history[i].t, q, -ux + beta * u, -(ux + beta * u)});
  }
  return out;
}

BlowupFit detect_and_fit_blowup(const RunOutput& run, double gamma, double growth) {
  if (!(growth > 1.0)) throw DomainError("fit growth factor must exceed 1");
  BlowupFit fit;
  if (gamma == 0.0) {
    fit.notes.push_back("gamma = 0: slopes cannot blow up");
    return fit;
  }
  if (run.reason == StopReason::t_max) {
    fit.notes.push_back("run reached t_max without breaking");
    return fit;
  }
  if (run.reason == StopReason::non_finite || run.series.size() < 2) {
    fit.inconclusive = true;
    fit.notes.push_back("run ended without a usable slope history");
    return fit;
  }
  const double m_end = run.series.back().min_slope;
  if (!(m_end < 0.0)) {
    fit.inconclusive = true;
    fit.notes.push_back("final min gamma u_x is not negative");
    return fit;
  }
  std::size_t first = run.series.size() - 1;
  while (first > 0 && std::abs(run.series[first - 1].min_slope) * growth >= std::abs(m_end) &&
         run.series[first - 1].min_slope < 0.0)
    --first;
  if (first == 0) {
    fit.inconclusive = true;
    fit.notes.push_back("|min gamma u_x| did not grow by the requested factor");
    return fit;
  }
  fit.window_samples = run.series.size() - first;
  fit.window_t0 = run.series[first].t;
  fit.window_t1 = run.series.back().t;
  if (fit.window_samples < 200) {
    fit.inconclusive = true;
    fit.notes.push_back("fewer than 200 samples in the fit window");
    return fit;
  }
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double t0 = fit.window_t0;
  for (std::size_t i = first; i < run.series.size(); ++i) {
    const double t = run.series[i].t - t0;
    const double y = gamma / run.series[i].min_slope;
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  const double m = static_cast<double>(fit.window_samples);
  fit.slope = (m * sty - st * sy) / (m * stt - st * st);
  fit.intercept = (sy - fit.slope * st) / m - fit.slope * t0;
  fit.rate_coeff = 1.0 / fit.slope;
  fit.t_star_est = -fit.intercept / fit.slope;
  fit.detected = true;
  if (!run.trajectories.empty()) {
    const double xb = run.final_state.min_slope_x;
    std::size_t best = 0;
    double best_d = 2.0;
    for (std::size_t i = 0; i < run.trajectories.size(); ++i) {
      const double q = run.trajectories[i].q.back();
      double d = std::abs((q - std::floor(q)) - xb);
      d = std::min(d, 1.0 - d);
      if (d < best_d) best_d = d, best = i;
    }
    fit.witness_trajectory = best;
  }
  return fit;
}

void write_history_csv(std::ostream& os, const RunOutput& run) {
  const std::size_t n = run.config.modes;
  const std::size_t kmax = run.config.dealias ? n / 3 : n / 2 - 1;
  RealFft fft(n);
  os << "t,energy,min_gamma_ux,max_abs_u";
  for (std::size_t i = 0; i < run.trajectories.size(); ++i) os << ",q" << i;
  os << '\n';
  char buf[64];
  for (std::size_t f = 0; f < run.history.size(); ++f) {
    const Diagnostics d = diagnose(run.history[f].u_hat, fft, run.config.gamma, kmax);
    std::vector<double> cols{run.history[f].t, d.energy, d.min_slope, d.max_abs_u};
    for (const auto& tr : run.trajectories) cols.push_back(tr.q[f]);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", cols[i]);
      os << (i ? "," : "") << buf;
    }
    os << '\n';
  }
}

}  // namespace rodbreak
