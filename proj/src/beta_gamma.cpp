#include "rodbreak/beta_gamma.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "rodbreak/roots.hpp"
#include "rodbreak/special_functions.hpp"
#include "rodbreak/variational.hpp"

namespace rodbreak {

namespace {

double gamma_of_alpha(double alpha) {
  if (alpha == -1.0) return std::numeric_limits<double>::infinity();
  return 3.0 / (1.0 + alpha);
}

bool nonnegative(const Extended& g) { return g.is_plus_infinity() || (g.is_finite() && g.value() >= 0.0); }

struct ScanOutcome {
  std::optional<std::pair<double, double>> bracket;  // g(lo) < 0 <= g(hi)
};

ScanOutcome scan_threshold(double alpha, int n, const ThresholdOptions& opt) {
  auto g = [&](double b) { return threshold_function(alpha, b, opt.fd_grid); };
  const double step = kBetaLimit / (n - 1);
  auto node = [&](int i) { return i == n - 1 ? kBetaLimit : i * step; };
  std::vector<double> vals(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const Extended gi = g(node(i));
    if (i > 0 && nonnegative(gi)) return {std::pair{node(i - 1), node(i)}};
    vals[static_cast<std::size_t>(i)] = gi.to_double();
  }
  // g < 0 on the whole grid; g may still poke above zero between nodes near its maximum
  const auto best = static_cast<int>(std::max_element(vals.begin(), vals.end()) - vals.begin());
  if (!std::isfinite(vals[static_cast<std::size_t>(best)])) return {};
  const double lo = node(std::max(best - 1, 0));
  const double hi = node(std::min(best + 1, n - 1));
  const auto [arg, max] = golden_max([&](double b) { return g(b).to_double(); }, lo, hi, 1e-9);
  if (max >= 0.0 && arg > lo) return {std::pair{lo, arg}};
  return {};
}

double refine_threshold(double alpha, std::pair<double, double> br, const ThresholdOptions& opt,
                        std::pair<double, double>& final_bracket) {
  double lo = br.first, hi = br.second;
  while (hi - lo > opt.beta_tol) {
    const double mid = 0.5 * (lo + hi);
    if (nonnegative(threshold_function(alpha, mid, opt.fd_grid)))
      hi = mid;
    else
      lo = mid;
  }
  final_bracket = {lo, hi};
  return 0.5 * (lo + hi);
}

double finite_or_minus_inf(const MinResult& r) { return r.value.to_double(); }

double bracketed_zero(const ScalarFn& h, double lo, double hi) {
  RootOptions opt;
  opt.xtol = 1e-11;
  return hybrid_newton_fd(h, lo, hi, 1e-7, opt);
}

double zero_scanning(const ScalarFn& h, double from, double to, double step, const char* what) {
  const auto br = scan_for_sign_change(h, from, to, step);
  if (!br) throw NumericalError(std::string("critical constants: no sign change for ") + what);
  return bracketed_zero(h, br->first, br->second);
}

}  // namespace

GammaParams GammaParams::from_gamma(double gamma) {
  if (gamma == 0.0)
    throw DomainError("gamma = 0 is the BBM case: all solutions are global and the blowup scenario never occurs");
  if (!std::isfinite(gamma)) return {gamma, -1.0};
  return {gamma, (3.0 - gamma) / gamma};
}

GammaParams GammaParams::from_alpha(double alpha) {
  if (alpha == -1.0) throw DomainError("alpha = -1 corresponds to |gamma| = infinity");
  return {3.0 / (1.0 + alpha), alpha};
}

std::string to_string(BetaGammaMethod m) {
  switch (m) {
    case BetaGammaMethod::exact_zero:
      return "exact-zero";
    case BetaGammaMethod::root_find:
      return "root-find";
    case BetaGammaMethod::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

Extended threshold_function(double alpha, double beta, std::optional<int> fd_grid) {
  const MinResult r = eval_I({alpha, beta}, fd_grid);
  if (!r.value.is_finite()) return Extended::minus_infinity();
  return Extended::finite(beta * beta + r.value.value() - alpha);
}

BetaGammaResult beta_threshold_for_alpha(double alpha, const ThresholdOptions& opt) {
  BetaGammaResult res;
  res.alpha = alpha;
  res.gamma = gamma_of_alpha(alpha);
  if (alpha <= rodbreak::alpha0()) {
    res.notes.push_back("alpha <= alpha_0: no weight makes the threshold function nonnegative");
    return res;
  }
  if (nonnegative(threshold_function(alpha, 0.0, opt.fd_grid))) {
    res.beta_gamma = Extended::finite(0.0);
    res.method = BetaGammaMethod::exact_zero;
    res.bracket = std::pair{0.0, 0.0};
    return res;
  }
  int n = opt.initial_grid;
  std::optional<double> previous;
  bool previous_set = false;
  for (;;) {
    const ScanOutcome scan = scan_threshold(alpha, n, opt);
    std::optional<double> current;
    std::pair<double, double> fb{0.0, 0.0};
    if (scan.bracket) current = refine_threshold(alpha, *scan.bracket, opt, fb);
    res.grid_points = n;
    const bool settled = previous_set && previous.has_value() == current.has_value() &&
                         (!current || std::abs(*current - *previous) <= opt.agreement_tol);
    if (settled || 2 * n > opt.max_grid) {
      if (!settled) res.notes.push_back("beta grid refinement did not settle");
      if (current) {
        res.beta_gamma = Extended::finite(*current);
        res.method = BetaGammaMethod::root_find;
        res.bracket = fb;
      } else {
        res.beta_gamma = Extended::plus_infinity();
        res.method = BetaGammaMethod::not_applicable;
        res.bracket.reset();
      }
      return res;
    }
    previous = current;
    previous_set = true;
    n *= 2;
  }
}

BetaGammaResult compute_beta_gamma(double gamma, const ThresholdOptions& opt) {
  const GammaParams gp = GammaParams::from_gamma(gamma);
  BetaGammaResult r = beta_threshold_for_alpha(gp.alpha, opt);
  r.gamma = gamma;
  return r;
}

CriticalConstants compute_critical_constants() {
  CriticalConstants c;
  c.alpha0 = rodbreak::alpha0();
  const double L2 = kBetaLimit * kBetaLimit;
  auto h1 = [L2](double a) { return L2 + finite_or_minus_inf(closed_form_I_limit(a, 2)) - a; };
  auto h2 = [](double a) { return 1.0 + finite_or_minus_inf(closed_form_I_beta1(a, 2)) - a; };
  c.alpha1_minus = zero_scanning(h1, 0.0, c.alpha0 + 1e-9, 0.25, "alpha_1^-");
  c.alpha1_plus = zero_scanning(h1, 0.0, 100.0, 0.5, "alpha_1^+");
  c.alpha2_minus = zero_scanning(h2, 0.0, -0.25 - kPi * kPi + 1e-9, 0.25, "alpha_2^-");
  c.alpha2_plus = zero_scanning(h2, 0.0, 100.0, 0.5, "alpha_2^+");
  c.gamma1_minus = 3.0 / (1.0 + c.alpha1_minus);
  c.gamma1_plus = 3.0 / (1.0 + c.alpha1_plus);
  c.gamma2_minus = 3.0 / (1.0 + c.alpha2_minus);
  c.gamma2_plus = 3.0 / (1.0 + c.alpha2_plus);
  return c;
}

const CriticalConstants& critical_constants() {
  static const CriticalConstants c = compute_critical_constants();
  return c;
}

std::string to_string(BoundForm f) {
  switch (f) {
    case BoundForm::radical_beta1:
      return "radical-beta1";
    case BoundForm::quadratic:
      return "quadratic";
    case BoundForm::none:
      return "none";
  }
  return "unknown";
}

ThresholdBound upper_bound_for_alpha(double alpha) {
  const CriticalConstants& cc = critical_constants();
  ThresholdBound out;
  out.alpha = alpha;
  out.gamma = gamma_of_alpha(alpha);
  if (alpha >= cc.alpha2_minus && alpha <= cc.alpha2_plus) {
    const double I1 = closed_form_I_beta1(alpha, 2).value.value();
    out.form = BoundForm::radical_beta1;
    out.bound = std::sqrt(std::max(alpha - I1, 0.0));
    return out;
  }
  if (alpha >= cc.alpha1_minus && alpha <= cc.alpha1_plus) {
    const double I1 = closed_form_I_beta1(alpha, 2).value.value();
    const double IL = closed_form_I_limit(alpha, 2).value.value();
    const double b = 0.5 * (kE - 1.0) * (IL - I1);
    const double c = 0.5 * (kE + 1.0) * I1 - 0.5 * (kE - 1.0) * IL - alpha;
    out.form = BoundForm::quadratic;
    out.b = b;
    out.c = c;
    out.bound = -0.5 * b + 0.5 * std::sqrt(std::max(b * b - 4.0 * c, 0.0));
    return out;
  }
  return out;
}

ThresholdBound upper_bound_beta_gamma(double gamma) {
  const GammaParams gp = GammaParams::from_gamma(gamma);
  ThresholdBound out = upper_bound_for_alpha(gp.alpha);
  out.gamma = gamma;
  return out;
}

BetaInfinity beta_infinity() {
  BetaInfinity out;
  const BetaGammaResult r = beta_threshold_for_alpha(-1.0);
  if (!r.beta_gamma.is_finite()) throw NumericalError("beta_infinity: threshold at alpha = -1 is not finite");
  out.value = r.beta_gamma.value();
  out.bound = *upper_bound_for_alpha(-1.0).bound;
  return out;
}

Extended beta_gamma_nonperiodic(double gamma) {
  if (!(gamma >= 1.0 && gamma <= 4.0)) return Extended::plus_infinity();
  const double r = -0.5 + 3.0 / gamma - std::sqrt(12.0 - 3.0 * gamma) / (2.0 * std::sqrt(gamma));
  return Extended::finite(std::sqrt(std::max(r, 0.0)));
}

Extended I_line(double alpha, double beta) {
  if (alpha < -0.25 || std::abs(beta) > 1.0) return Extended::minus_infinity();
  return Extended::finite(-0.5 + 0.5 * std::sqrt(1.0 + 4.0 * alpha));
}

std::pair<double, double> max_threshold_function(double alpha, std::optional<int> fd_grid) {
  constexpr int n = 65;
  const double step = kBetaLimit / (n - 1);
  auto g = [&](double b) { return threshold_function(alpha, b, fd_grid).to_double(); };
  auto node = [&](int i) { return i == n - 1 ? kBetaLimit : i * step; };
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double v = g(node(i));
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  if (!std::isfinite(best_val)) return {0.0, best_val};
  const auto [arg, max] = golden_max(g, node(std::max(best - 1, 0)), node(std::min(best + 1, n - 1)), 1e-8);
  if (max > best_val) return {arg, max};
  return {node(best), best_val};
}

ApplicabilityInterval compute_applicability_interval(std::optional<int> fd_grid) {
  const CriticalConstants& cc = critical_constants();
  auto G = [&](double a) { return max_threshold_function(a, fd_grid).second; };
  ApplicabilityInterval out;
  auto edge = [&](double inside, double dir) {
    double outside = inside;
    do {
      inside = outside;
      outside = inside + 0.5 * dir;
    } while (G(outside) >= 0.0 && outside > cc.alpha0 && outside < 1e3);
    return bisect(G, std::min(inside, outside), std::max(inside, outside), 1e-8);
  };
  out.alpha_lo = edge(cc.alpha1_minus, -1.0);
  out.alpha_hi = edge(cc.alpha1_plus, 1.0);
  out.gamma_left = 3.0 / (1.0 + out.alpha_lo);
  out.gamma_right = 3.0 / (1.0 + out.alpha_hi);
  out.beta_at_alpha_lo = max_threshold_function(out.alpha_lo, fd_grid).first;
  out.beta_at_alpha_hi = max_threshold_function(out.alpha_hi, fd_grid).first;
  return out;
}

const ApplicabilityInterval& applicability_interval() {
  static const ApplicabilityInterval v = compute_applicability_interval();
  return v;
}

std::vector<ApplicabilityRow> scan_applicability(double gamma_min, double gamma_max, double step, unsigned threads) {
  if (!(step > 0.0) || !(gamma_max >= gamma_min)) throw DomainError("scan needs gamma_min <= gamma_max and step > 0");
  std::vector<double> gammas;
  const auto count = static_cast<long>(std::floor((gamma_max - gamma_min) / step + 1e-9)) + 1;
  for (long i = 0; i < count; ++i) {
    const double g = gamma_min + static_cast<double>(i) * step;
    if (std::abs(g) > 1e-12) gammas.push_back(g);
  }
  std::vector<ApplicabilityRow> rows(gammas.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  (void)rodbreak::alpha0();
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < gammas.size(); i = next++) {
      const BetaGammaResult r = compute_beta_gamma(gammas[i]);
      rows[i] = {gammas[i], r.alpha, r.beta_gamma};
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return rows;
}

const std::vector<MaterialEntry>& materials_table() {
  static const std::vector<MaterialEntry> table = {
      {-29.476, 0.326, 2e-3, ""},
      {-4.891, 0.492, 1e-2, "tabulated as \"0..492\"; read as 0.492"},
      {-2.571, 0.684, 2e-3, ""},
      {-1.646, 0.933, 2e-3, ""},
      {-0.539, std::nullopt, 0.0, "not applicable"},
      {1.010, 0.507, 2e-3, ""},
      {1.236, 0.375, 2e-3, ""},
      {1.700, 0.207, 2e-3, ""},
      {2.668, 0.035, 2e-3, ""},
      {3.417, 0.035, 2e-3, ""},
  };
  return table;
}

}  // namespace rodbreak
