// Blowup thresholds beta_gamma, the critical constants alpha_1^{+-},
// alpha_2^{+-}, the explicit upper bounds for beta_gamma, and the
// corresponding quantities on the real line.
#ifndef RODBREAK_BETA_GAMMA_HPP
#define RODBREAK_BETA_GAMMA_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rodbreak/common.hpp"

namespace rodbreak {

/// gamma and alpha = (3 - gamma)/gamma; gamma = 3/(1 + alpha).
struct GammaParams {
  double gamma = 1.0;
  double alpha = 2.0;

  /// Throws DomainError for gamma = 0 (all solutions are global there).
  static GammaParams from_gamma(double gamma);
  /// alpha = -1 corresponds to |gamma| = infinity and is rejected.
  static GammaParams from_alpha(double alpha);
};

enum class BetaGammaMethod { exact_zero, root_find, not_applicable };

std::string to_string(BetaGammaMethod m);

struct BetaGammaResult {
  double gamma = 0.0;  ///< +-inf for the alpha = -1 limit
  double alpha = 0.0;
  Extended beta_gamma = Extended::plus_infinity();
  BetaGammaMethod method = BetaGammaMethod::not_applicable;
  /// Final bisection bracket [lo, hi] around beta_gamma (empty when not applicable).
  std::optional<std::pair<double, double>> bracket;
  /// Number of beta grid points used by the last scan.
  int grid_points = 0;
  std::vector<std::string> notes;
};

struct ThresholdOptions {
  int initial_grid = 64;
  int max_grid = 1024;
  double beta_tol = 1e-6;
  double agreement_tol = 1e-4;
  std::optional<int> fd_grid;
};

/// g(beta) = beta^2 + I(alpha, beta) - alpha, -inf where I is -inf.
Extended threshold_function(double alpha, double beta, std::optional<int> fd_grid = std::nullopt);

/// inf{ beta >= 0 : beta^2 + I(alpha, beta) - alpha >= 0 } (+inf when empty).
BetaGammaResult beta_threshold_for_alpha(double alpha, const ThresholdOptions& opt = {});
BetaGammaResult compute_beta_gamma(double gamma, const ThresholdOptions& opt = {});

struct CriticalConstants {
  double alpha0 = 0.0;
  double alpha1_minus = 0.0, alpha1_plus = 0.0;
  double alpha2_minus = 0.0, alpha2_plus = 0.0;
  double gamma1_minus = 0.0, gamma1_plus = 0.0;
  double gamma2_minus = 0.0, gamma2_plus = 0.0;
};

/// Zeros of ((e+1)/(e-1))^2 + I(alpha, (e+1)/(e-1)) - alpha and of
/// 1 + I(alpha, 1) - alpha, located with closed forms only.  Cached.
const CriticalConstants& critical_constants();
CriticalConstants compute_critical_constants();

enum class BoundForm { radical_beta1, quadratic, none };

std::string to_string(BoundForm f);

struct ThresholdBound {
  double gamma = 0.0;
  double alpha = 0.0;
  BoundForm form = BoundForm::none;
  std::optional<double> bound;
  /// Coefficients of beta^2 + b beta + c in the quadratic form.
  std::optional<double> b, c;
};

/// Explicit upper bound for beta_gamma; empty inside (gamma_1^-, gamma_1^+).
ThresholdBound upper_bound_for_alpha(double alpha);
ThresholdBound upper_bound_beta_gamma(double gamma);

struct BetaInfinity {
  double value = 0.0;
  double bound = 0.0;
};

/// The |gamma| -> infinity limit (alpha = -1) of beta_gamma and its explicit bound.
BetaInfinity beta_infinity();

/// Threshold on the real line, finite only for 1 <= gamma <= 4.
Extended beta_gamma_nonperiodic(double gamma);

/// Line version of I: -1/2 + sqrt(1 + 4 alpha)/2 for alpha >= -1/4 and |beta| <= 1, else -inf.
Extended I_line(double alpha, double beta);

struct ApplicabilityRow {
  double gamma = 0.0;
  double alpha = 0.0;
  Extended beta_gamma = Extended::plus_infinity();
};

struct ApplicabilityInterval {
  double alpha_lo = 0.0, alpha_hi = 0.0;
  double gamma_left = 0.0;   ///< image of alpha_lo, negative
  double gamma_right = 0.0;  ///< image of alpha_hi, positive
  double beta_at_alpha_lo = 0.0, beta_at_alpha_hi = 0.0;
};

/// max over beta in [0, (e+1)/(e-1)] of beta^2 + I(alpha, beta) - alpha, with its argmax.
std::pair<double, double> max_threshold_function(double alpha, std::optional<int> fd_grid = std::nullopt);

/// The alpha range where some beta satisfies beta^2 + I(alpha, beta) - alpha >= 0.  Cached.
const ApplicabilityInterval& applicability_interval();
ApplicabilityInterval compute_applicability_interval(std::optional<int> fd_grid = std::nullopt);

/// beta_gamma on gamma_min, gamma_min + step, ..., gamma_max (gamma = 0 skipped).
/// Rows are computed on `threads` workers and returned in gamma order.
std::vector<ApplicabilityRow> scan_applicability(double gamma_min, double gamma_max, double step,
                                                 unsigned threads = 0);

struct MaterialEntry {
  double gamma;
  std::optional<double> expected;  ///< empty for the not-applicable entry
  double tolerance;
  std::string note;
};

/// The hyperelastic materials and their tabulated thresholds.
const std::vector<MaterialEntry>& materials_table();

}  // namespace rodbreak

#endif
