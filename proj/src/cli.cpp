#include "rodbreak/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "rodbreak/beta_gamma.hpp"
#include "rodbreak/blowup.hpp"
#include "rodbreak/simulator.hpp"
#include "rodbreak/special_functions.hpp"
#include "rodbreak/variational.hpp"

namespace rodbreak::cli {

using nlohmann::json;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json opt(const std::optional<double>& v) { return v ? real(*v) : json(nullptr); }

json envelope(const std::string& command, json parameters, json results, json provenance) {
  json j;
  j["tool"] = kToolVersion;
  j["command"] = command;
  j["parameters"] = std::move(parameters);
  j["results"] = std::move(results);
  j["provenance"] = std::move(provenance);
  return j;
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw UsageError(std::string(name) + " must be a finite number");
}

void require_not_nan(double v, const char* name) {
  if (std::isnan(v)) throw UsageError(std::string(name) + " must be a number");
}

json min_result_json(const MinResult& r, int samples) {
  json j;
  j["alpha"] = r.problem.alpha;
  j["beta"] = r.problem.beta;
  j["value"] = to_json(r.value);
  j["method"] = to_string(r.method);
  j["error_estimate"] = r.error_estimate;
  j["left_pinned"] = r.left_pinned;
  j["right_pinned"] = r.right_pinned;
  j["lambda_min"] = opt(r.lambda_min);
  j["warnings"] = r.warnings;
  if (samples > 0 && !r.minimizer.x.empty()) {
    const std::size_t n = r.minimizer.intervals();
    json xs = json::array(), us = json::array();
    for (int i = 0; i <= samples; ++i) {
      const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(i) * n / samples));
      xs.push_back(r.minimizer.x[k]);
      us.push_back(r.minimizer.values[k]);
    }
    j["minimizer"] = {{"x", xs}, {"u", us}};
  }
  return j;
}

json beta_gamma_json(const BetaGammaResult& r) {
  json j;
  j["gamma"] = real(r.gamma);
  j["alpha"] = r.alpha;
  j["beta_gamma"] = to_json(r.beta_gamma);
  j["method"] = to_string(r.method);
  j["bracket"] = r.bracket ? json::array({r.bracket->first, r.bracket->second}) : json(nullptr);
  j["grid_points"] = r.grid_points;
  j["notes"] = r.notes;
  return j;
}

json bound_json(const ThresholdBound& b) {
  return {{"gamma", real(b.gamma)}, {"alpha", b.alpha}, {"form", to_string(b.form)},
          {"bound", opt(b.bound)},  {"b", opt(b.b)},      {"c", opt(b.c)}};
}

json verdict_json(const BlowupVerdict& v) {
  return {{"status", to_string(v.status)},
          {"triggered", v.triggered},
          {"gamma", v.gamma},
          {"beta_used", to_json(v.beta_used)},
          {"margin", opt(v.margin)},
          {"witness_x0", opt(v.witness_x0)},
          {"tstar_bound", opt(v.tstar_bound)},
          {"tstar_x0", opt(v.tstar_x0)},
          {"gamma3_display_bound", opt(v.gamma3_display_bound)},
          {"notes", v.notes}};
}

json datum_json(const InitialDatum& d) {
  json params = json::object();
  for (const auto& [k, v] : d.params()) params[k] = v;
  return {{"domain", to_string(d.domain())}, {"name", d.name()}, {"params", params}, {"warnings", d.warnings()}};
}

json spectrum_json(const Spectrum& s) {
  json a = json::array();
  for (const auto& c : s) a.push_back({c.real(), c.imag()});
  return a;
}

InitialDatum load_datum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open datum file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("datum file '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_datum(j);
}

json fd_provenance() {
  return {{"fd_grid", default_fd_grid()}, {"richardson", "N and 2N"}};
}

// ---- commands ---------------------------------------------------------------

struct EvalIArgs {
  double alpha = 0.0, beta = 0.0;
  std::optional<int> grid;
  int samples = 0;
};

json cmd_eval_i(const EvalIArgs& a) {
  require_finite(a.alpha, "--alpha");
  require_finite(a.beta, "--beta");
  if (a.grid && *a.grid < 64) throw UsageError("--grid must be at least 64");
  if (a.samples < 0) throw UsageError("--samples must be nonnegative");
  const MinResult r = eval_I({a.alpha, a.beta}, a.grid);
  const int grid = a.grid.value_or(default_fd_grid());
  json params = {{"alpha", a.alpha}, {"beta", a.beta}, {"grid", grid}, {"samples", a.samples}};
  json prov = {{"method", to_string(r.method)}, {"error_estimate", r.error_estimate}, {"fd_grid", grid}};
  return envelope("eval-i", params, min_result_json(r, a.samples), prov);
}

json cmd_beta_gamma(double gamma) {
  require_not_nan(gamma, "--gamma");
  const BetaGammaResult r = compute_beta_gamma(gamma);
  json res = beta_gamma_json(r);
  res["upper_bound"] = std::isfinite(gamma) ? bound_json(upper_bound_beta_gamma(gamma)) : bound_json(upper_bound_for_alpha(-1.0));
  json prov = fd_provenance();
  prov["method"] = to_string(r.method);
  prov["beta_tolerance"] = ThresholdOptions{}.beta_tol;
  return envelope("beta-gamma", {{"gamma", real(gamma)}}, res, prov);
}

json cmd_constants() {
  const CriticalConstants& c = critical_constants();
  json res = {{"alpha0", c.alpha0},
              {"poincare_limit", -1.0 / c.alpha0},
              {"alpha1_minus", c.alpha1_minus},
              {"alpha1_plus", c.alpha1_plus},
              {"alpha2_minus", c.alpha2_minus},
              {"alpha2_plus", c.alpha2_plus},
              {"gamma1_minus", c.gamma1_minus},
              {"gamma1_plus", c.gamma1_plus},
              {"gamma2_minus", c.gamma2_minus},
              {"gamma2_plus", c.gamma2_plus}};
  json prov = {{"method", "closed forms at beta = 1 and beta = (e+1)/(e-1); Legendre series for alpha0"}};
  return envelope("constants", json::object(), res, prov);
}

json cmd_bounds(double gamma) {
  require_not_nan(gamma, "--gamma");
  if (gamma == 0.0) GammaParams::from_gamma(gamma);
  const BetaInfinity inf = beta_infinity();
  json res;
  res["upper_bound"] = std::isfinite(gamma) ? bound_json(upper_bound_beta_gamma(gamma)) : bound_json(upper_bound_for_alpha(-1.0));
  res["nonperiodic_beta_gamma"] = std::isfinite(gamma) ? to_json(beta_gamma_nonperiodic(gamma)) : json("+inf");
  res["beta_infinity"] = {{"value", inf.value}, {"bound", inf.bound}};
  json prov = fd_provenance();
  prov["method"] = "chord of I between beta = 1 and beta = (e+1)/(e-1)";
  return envelope("bounds", {{"gamma", real(gamma)}}, res, prov);
}

struct CheckArgs {
  std::string datum;
  double gamma = 1.0;
  bool line = false;
  int grid = 4096;
  std::optional<double> beta;
};

json cmd_check(const CheckArgs& a) {
  require_finite(a.gamma, "--gamma");
  if (a.grid < 64) throw UsageError("--grid must be at least 64");
  const InitialDatum d = load_datum(a.datum);
  json params = {{"datum", a.datum}, {"gamma", a.gamma}, {"line", a.line}, {"grid", a.grid}, {"beta", opt(a.beta)}};
  json res;
  res["datum"] = datum_json(d);
  json prov = fd_provenance();
  if (a.line) {
    if (d.domain() != DatumDomain::line) throw DomainError("--line needs a datum with domain \"line\"");
    if (a.beta) throw UsageError("--beta applies to the periodic criterion only");
    res["verdict"] = verdict_json(check_blowup_line(d, a.gamma));
    const bool in_range = a.gamma >= 1.0 && a.gamma <= 4.0;
    res["decay_test"] = in_range ? json(decay_blowup_test_line(d, a.gamma)) : json(nullptr);
    prov["method"] = "line criterion with the explicit threshold";
  } else {
    if (d.domain() != DatumDomain::circle) throw DomainError("the periodic criterion needs a datum with domain \"circle\"; use --line");
    if (a.beta) {
      require_finite(*a.beta, "--beta");
      const BetaGammaResult bg = compute_beta_gamma(a.gamma);
      if (!bg.beta_gamma.is_finite() || *a.beta < bg.beta_gamma.value())
        throw DomainError("inadmissible beta " + std::to_string(*a.beta) + ": the criterion needs beta >= beta_gamma = " +
                          bg.beta_gamma.to_string());
      res["verdict"] = verdict_json(check_blowup_periodic_with_beta(d, a.gamma, *a.beta, a.grid));
    } else {
      res["verdict"] = verdict_json(check_blowup_periodic(d, a.gamma, a.grid));
    }
    prov["method"] = "periodic criterion, grid argmin with golden refinement";
    prov["strictness_tolerance"] = kStrictnessTol;
  }
  return envelope("check", params, res, prov);
}

struct SimulateArgs {
  std::string datum;
  double gamma = 1.0;
  std::size_t modes = 512;
  double t_max = 10.0;
  double slope_stop = 1e4;
  std::optional<std::string> csv;
  std::vector<double> track;
};

json cmd_simulate(const SimulateArgs& a) {
  require_finite(a.gamma, "--gamma");
  require_finite(a.t_max, "--tmax");
  const InitialDatum d = load_datum(a.datum);
  if (d.domain() != DatumDomain::circle) throw DomainError("the simulator runs on the circle only");
  SimConfig cfg;
  cfg.gamma = a.gamma;
  cfg.modes = a.modes;
  cfg.t_max = a.t_max;
  cfg.slope_stop = a.slope_stop;
  cfg.track = a.track;
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  RodSimulator sim(cfg, d);
  const RunOutput run = sim.run();
  if (a.csv) {
    std::ofstream os(*a.csv);
    if (!os) throw UsageError("cannot write csv file '" + *a.csv + "'");
    write_history_csv(os, run);
  }

  json params = {{"datum", a.datum},         {"gamma", a.gamma},     {"modes", a.modes},
                 {"tmax", a.t_max},          {"slope_stop", a.slope_stop}, {"dt0", cfg.dt0},
                 {"cfl_safety", cfg.cfl_safety}, {"dealias", cfg.dealias}, {"track", a.track},
                 {"csv", a.csv ? json(*a.csv) : json(nullptr)}};
  json res;
  res["datum"] = datum_json(d);
  res["stop_reason"] = to_string(run.reason);
  res["t_final"] = run.final_state.t;
  res["steps"] = run.series.empty() ? 0 : run.series.size() - 1;
  res["energy_initial"] = run.initial.energy;
  res["energy_final"] = run.final_state.energy;
  res["energy_drift_smooth"] = run.energy_drift_smooth;
  res["min_slope_final"] = run.final_state.min_slope;
  res["max_abs_u_final"] = run.final_state.max_abs_u;
  res["notes"] = run.notes;

  json fit = nullptr;
  std::optional<double> t_star;
  if (a.gamma != 0.0) {
    const BlowupFit f = detect_and_fit_blowup(run, a.gamma);
    fit = {{"detected", f.detected},
           {"inconclusive", f.inconclusive},
           {"t_star_est", f.detected ? json(f.t_star_est) : json(nullptr)},
           {"rate_coeff", f.detected ? json(f.rate_coeff) : json(nullptr)},
           {"rate_expected", 2.0 / a.gamma},
           {"rate_rel_error", f.detected ? json((f.rate_coeff - 2.0 / a.gamma) / (2.0 / a.gamma)) : json(nullptr)},
           {"window_samples", f.window_samples},
           {"window", f.detected ? json::array({f.window_t0, f.window_t1}) : json(nullptr)},
           {"witness_trajectory", f.witness_trajectory ? json(*f.witness_trajectory) : json(nullptr)},
           {"notes", f.notes}};
    if (f.detected) t_star = f.t_star_est;
  }
  res["fit"] = fit;

  json theory = nullptr;
  if (a.gamma != 0.0) {
    const BlowupVerdict v = check_blowup_periodic(d, a.gamma);
    theory = {{"status", to_string(v.status)}, {"tstar_bound", opt(v.tstar_bound)}};
    if (t_star && v.tstar_bound) theory["consistent"] = *t_star <= *v.tstar_bound;
    else theory["consistent"] = nullptr;
  }
  res["lifespan"] = theory;

  json traj = json::array();
  for (const auto& tr : run.trajectories)
    traj.push_back({{"x0", tr.x0}, {"t_final", tr.t.empty() ? 0.0 : tr.t.back()}, {"q_final", tr.q.empty() ? tr.x0 : tr.q.back()}});
  res["trajectories"] = traj;
  res["final_coefficients"] = spectrum_json(run.final_state.u_hat);

  json prov = {{"method", "pseudo-spectral RK4, 2/3 dealiasing"},
               {"fit_window", "last doubling of |min gamma u_x|, >= 200 samples"},
               {"resolution_tol", cfg.resolution_tol}};
  return envelope("simulate", params, res, prov);
}

struct ScanArgs {
  double gmin = -10.0, gmax = 10.0, step = 0.5;
  unsigned threads = 0;
  bool interval = false;
};

json cmd_scan(const ScanArgs& a) {
  require_finite(a.gmin, "--gamma-min");
  require_finite(a.gmax, "--gamma-max");
  require_finite(a.step, "--step");
  if (!(a.step > 0.0)) throw UsageError("--step must be positive");
  if (a.gmax < a.gmin) throw UsageError("--gamma-max must not be below --gamma-min");
  if ((a.gmax - a.gmin) / a.step > 1e5) throw UsageError("scan has more than 1e5 rows");
  const auto rows = scan_applicability(a.gmin, a.gmax, a.step, a.threads);
  json table = json::array();
  for (const auto& r : rows)
    table.push_back({{"gamma", r.gamma}, {"alpha", r.alpha}, {"beta_gamma", to_json(r.beta_gamma)},
                     {"applicable", r.beta_gamma.is_finite()}});
  json res = {{"rows", table}};
  if (a.interval) {
    const ApplicabilityInterval& iv = applicability_interval();
    res["interval"] = {{"alpha_lo", iv.alpha_lo},     {"alpha_hi", iv.alpha_hi},
                       {"gamma_left", iv.gamma_left}, {"gamma_right", iv.gamma_right},
                       {"beta_at_alpha_lo", iv.beta_at_alpha_lo}, {"beta_at_alpha_hi", iv.beta_at_alpha_hi}};
  }
  json params = {{"gamma_min", a.gmin}, {"gamma_max", a.gmax}, {"step", a.step}, {"interval", a.interval}};
  json prov = fd_provenance();
  prov["method"] = "beta grid scan with bisection";
  return envelope("scan", params, res, prov);
}

json cmd_materials() {
  json rows = json::array();
  bool all = true;
  for (const auto& m : materials_table()) {
    const BetaGammaResult r = compute_beta_gamma(m.gamma);
    bool pass;
    if (m.expected) pass = r.beta_gamma.is_finite() && std::abs(r.beta_gamma.value() - *m.expected) <= m.tolerance;
    else pass = r.beta_gamma.is_plus_infinity();
    all = all && pass;
    rows.push_back({{"gamma", m.gamma},
                    {"alpha", r.alpha},
                    {"expected", m.expected ? json(*m.expected) : json("not-applicable")},
                    {"computed", to_json(r.beta_gamma)},
                    {"tolerance", m.tolerance},
                    {"pass", pass},
                    {"note", m.note}});
  }
  json prov = fd_provenance();
  prov["method"] = "beta grid scan with bisection";
  return envelope("materials", json::object(), {{"rows", rows}, {"all_pass", all}}, prov);
}

// ---- figure data -------------------------------------------------------------

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
  return v;
}

template <class F>
std::vector<std::string> parallel_rows(const std::vector<double>& xs, F&& row, unsigned threads) {
  std::vector<std::string> out(xs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(xs.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex m;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < xs.size();) {
        try {
          out[i] = row(xs[i]);
        } catch (...) {
          std::lock_guard lock(m);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

void fig_data(const std::string& which, int points, unsigned threads, std::ostream& out) {
  if (which == "upbound-betag") {
    out << "gamma,alpha,form,bound\n";
    for (double g : linspace(-10.0, 10.0, points)) {
      if (g == 0.0) continue;
      const ThresholdBound b = upper_bound_beta_gamma(g);
      out << fmt(g) << ',' << fmt(b.alpha) << ',' << to_string(b.form) << ',' << fmt(b.bound) << '\n';
    }
  } else if (which == "i2beta") {
    out << "beta,I2,g\n";
    for (double b : linspace(0.0, kBetaLimit, points)) {
      const double v = closed_form_I2(std::min(b, kBetaLimit)).value.value();
      out << fmt(b) << ',' << fmt(v) << ',' << fmt(b * b + v - 2.0) << '\n';
    }
  } else if (which == "ifini") {
    out << "beta,C,alpha_boundary\n";
    auto rows = parallel_rows(
        linspace(-kBetaLimit, kBetaLimit, points),
        [](double b) {
          const PoincareConstant c = poincare_best_constant(std::clamp(b, -kBetaLimit, kBetaLimit));
          return fmt(b) + ',' + fmt(c.C) + ',' + fmt(-1.0 / c.C) + '\n';
        },
        threads);
    for (const auto& r : rows) out << r;
  } else if (which == "courbe") {
    const ApplicabilityInterval& iv = applicability_interval();
    std::vector<double> gs = linspace(-10.0, iv.gamma_left - 1e-4, points / 2);
    for (double g : linspace(iv.gamma_right + 1e-4, 10.0, points - points / 2)) gs.push_back(g);
    auto rows = parallel_rows(
        gs,
        [](double g) {
          const BetaGammaResult r = compute_beta_gamma(g);
          const ThresholdBound b = upper_bound_beta_gamma(g);
          return fmt(g) + ',' + fmt(r.alpha) + ',' + fmt(r.beta_gamma.to_double()) + ',' + fmt(b.bound) + '\n';
        },
        threads);
    out << "gamma,alpha,beta_gamma,bound\n";
    for (const auto& r : rows) out << r;
  } else {
    throw UsageError("unknown figure '" + which + "'");
  }
}

void write_error(std::ostream& err, const std::string& command, const std::string& kind, const std::string& message) {
  json j = {{"tool", kToolVersion}, {"command", command}, {"error", {{"kind", kind}, {"message", message}}}};
  err << j.dump(2) << '\n';
}

}  // namespace

json to_json(const Extended& v) {
  switch (v.kind()) {
    case Extended::Kind::minus_infinity: return "-inf";
    case Extended::Kind::plus_infinity: return "+inf";
    default: return v.value();
  }
}

InitialDatum parse_datum(const json& j) {
  if (!j.is_object()) throw UsageError("datum must be a JSON object");
  if (!j.contains("domain") || !j["domain"].is_string()) throw UsageError("datum needs \"domain\": \"circle\" or \"line\"");
  const std::string dom = j["domain"];
  DatumDomain domain;
  if (dom == "circle") domain = DatumDomain::circle;
  else if (dom == "line") domain = DatumDomain::line;
  else throw UsageError("datum domain must be \"circle\" or \"line\", got \"" + dom + "\"");

  const int kinds = int(j.contains("family")) + int(j.contains("fourier")) + int(j.contains("samples"));
  if (kinds != 1) throw UsageError("datum needs exactly one of \"family\", \"fourier\", \"samples\"");
  for (const auto& [key, _] : j.items())
    if (key != "domain" && key != "family" && key != "fourier" && key != "samples")
      throw UsageError("unknown datum key \"" + key + "\"");

  try {
    if (j.contains("family")) {
      const json& f = j["family"];
      if (!f.is_object() || !f.contains("name") || !f["name"].is_string())
        throw UsageError("\"family\" needs a string \"name\"");
      InitialDatum::Params params;
      if (f.contains("params")) {
        if (!f["params"].is_object()) throw UsageError("\"params\" must be an object of numbers");
        for (const auto& [k, v] : f["params"].items()) {
          if (!v.is_number()) throw UsageError("parameter \"" + k + "\" must be a number");
          params[k] = v.get<double>();
        }
      }
      return InitialDatum::family(domain, f["name"].get<std::string>(), params);
    }
    if (domain != DatumDomain::circle) throw UsageError("\"fourier\" and \"samples\" data live on the circle");
    if (j.contains("fourier")) {
      Spectrum s;
      for (const auto& c : j["fourier"]) {
        if (!c.is_array() || c.size() != 2 || !c[0].is_number() || !c[1].is_number())
          throw UsageError("fourier coefficients must be [re, im] pairs");
        s.emplace_back(c[0].get<double>(), c[1].get<double>());
      }
      return InitialDatum::fourier(std::move(s));
    }
    std::vector<double> v;
    if (!j["samples"].is_array()) throw UsageError("\"samples\" must be an array of numbers");
    for (const auto& x : j["samples"]) {
      if (!x.is_number()) throw UsageError("\"samples\" must be an array of numbers");
      v.push_back(x.get<double>());
    }
    return InitialDatum::samples(std::move(v));
  } catch (const DomainError& e) {
    throw UsageError(std::string("invalid datum: ") + e.what());
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Wave-breaking thresholds and simulations for the periodic hyperelastic rod equation", "rodbreak"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  EvalIArgs ea;
  auto* eval = app.add_subcommand("eval-i", "Minimum I(alpha, beta) of the weighted Dirichlet problem");
  eval->add_option("--alpha", ea.alpha)->required();
  eval->add_option("--beta", ea.beta)->required();
  eval->add_option("--grid", ea.grid, "finite-difference intervals (default: RODBREAK_GRID or 4096)");
  eval->add_option("--samples", ea.samples, "number of minimiser intervals to report");

  double bg_gamma = 1.0;
  auto* bg = app.add_subcommand("beta-gamma", "Blowup threshold beta_gamma");
  bg->add_option("--gamma", bg_gamma)->required();

  auto* constants = app.add_subcommand("constants", "alpha_0 and the critical constants alpha/gamma 1+-, 2+-");

  double bd_gamma = 1.0;
  auto* bounds = app.add_subcommand("bounds", "Explicit upper bounds for beta_gamma");
  bounds->add_option("--gamma", bd_gamma)->required();

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Blowup criterion for an initial datum");
  check->add_option("--datum", ca.datum, "datum JSON file")->required();
  check->add_option("--gamma", ca.gamma)->required();
  check->add_flag("--line", ca.line, "use the criterion on the real line");
  check->add_option("--grid", ca.grid, "grid for the margin search");
  check->add_option("--beta", ca.beta, "use this beta (>= beta_gamma) instead of beta_gamma");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Pseudo-spectral run with breaking detection and rate fit");
  simulate->add_option("--datum", sa.datum, "datum JSON file")->required();
  simulate->add_option("--gamma", sa.gamma)->required();
  simulate->add_option("--modes", sa.modes, "grid size, power of two >= 128");
  simulate->add_option("--tmax", sa.t_max);
  simulate->add_option("--slope-stop", sa.slope_stop);
  simulate->add_option("--csv", sa.csv, "write the time series to this file");
  simulate->add_option("--track", sa.track, "starting points of characteristics");

  ScanArgs sc;
  auto* scan = app.add_subcommand("scan", "beta_gamma over a range of gamma");
  scan->add_option("--gamma-min", sc.gmin)->required();
  scan->add_option("--gamma-max", sc.gmax)->required();
  scan->add_option("--step", sc.step)->required();
  scan->add_option("--threads", sc.threads, "worker threads (0: hardware concurrency)");
  scan->add_flag("--interval", sc.interval, "also locate the applicability interval");

  auto* materials = app.add_subcommand("materials", "Thresholds for the tabulated hyperelastic materials");

  std::string which;
  int points = 0;
  unsigned fig_threads = 0;
  auto* fig = app.add_subcommand("fig-data", "CSV samples of a figure curve");
  fig->add_option("--which", which)->required()->check(CLI::IsMember({"upbound-betag", "i2beta", "ifini", "courbe"}));
  fig->add_option("--points", points, "number of samples");
  fig->add_option("--threads", fig_threads);

  std::string command = argc > 1 ? argv[1] : "";
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, command, "usage", e.what());
    return 2;
  }

  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  try {
    json report;
    if (*eval) report = cmd_eval_i(ea);
    else if (*bg) report = cmd_beta_gamma(bg_gamma);
    else if (*constants) report = cmd_constants();
    else if (*bounds) report = cmd_bounds(bd_gamma);
    else if (*check) report = cmd_check(ca);
    else if (*simulate) report = cmd_simulate(sa);
    else if (*scan) report = cmd_scan(sc);
    else if (*materials) report = cmd_materials();
    else if (*fig) {
      const std::map<std::string, int> defaults = {{"upbound-betag", 400}, {"i2beta", 101}, {"ifini", 81}, {"courbe", 80}};
      if (points == 0) points = defaults.at(which);
      if (points < 2 || points > 100000) throw UsageError("--points must lie in [2, 100000]");
      fig_data(which, points, fig_threads, out);
      return 0;
    }
    out << report.dump(2) << '\n';
    return 0;
  } catch (const UsageError& e) {
    write_error(err, command, "usage", e.what());
    return 2;
  } catch (const DomainError& e) {
    write_error(err, command, "domain", e.what());
    return 2;
  } catch (const NumericalError& e) {
    write_error(err, command, "numerical", e.what());
    return 1;
  } catch (const std::exception& e) {
    write_error(err, command, "internal", e.what());
    return 1;
  }
}

}  // namespace rodbreak::cli
