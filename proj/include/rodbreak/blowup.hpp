// Local-in-space blowup criteria for initial data, the lifespan bound, the
// f-g comparison argument as a numerical harness, and the monotonicity tests
// that global solutions would have to satisfy.
#ifndef RODBREAK_BLOWUP_HPP
#define RODBREAK_BLOWUP_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rodbreak/common.hpp"
#include "rodbreak/datum.hpp"
#include "rodbreak/grid.hpp"

namespace rodbreak {

enum class VerdictStatus { triggered, not_triggered, boundary, not_applicable };

std::string to_string(VerdictStatus s);

struct BlowupVerdict {
  VerdictStatus status = VerdictStatus::not_applicable;
  bool triggered = false;
  double gamma = 0.0;
  Extended beta_used = Extended::plus_infinity();
  /// min over x of u0' + beta|u0| (gamma > 0) or -u0' + beta|u0| (gamma < 0).
  std::optional<double> margin;
  /// argmin of the margin.
  std::optional<double> witness_x0;
  /// min over triggering x0 of 2/(|gamma| sqrt(u0'(x0)^2 - beta^2 u0(x0)^2)), and where it is attained.
  std::optional<double> tstar_bound;
  std::optional<double> tstar_x0;
  /// For gamma = 3 only: the alternative value (2/3) sqrt(-inf u0'), reported next to the bound above.
  std::optional<double> gamma3_display_bound;
  std::vector<std::string> notes;
};

/// Margins within this distance of zero are reported as boundary cases.
inline constexpr double kStrictnessTol = 1e-9;

/// Periodic criterion with beta = beta_gamma.  Throws DomainError for gamma = 0
/// or a line datum.
BlowupVerdict check_blowup_periodic(const InitialDatum& datum, double gamma, int grid = 4096);

/// Same with an explicitly supplied beta (any beta >= beta_gamma is admissible).
BlowupVerdict check_blowup_periodic_with_beta(const InitialDatum& datum, double gamma, double beta, int grid = 4096);

/// Criterion on the line with the explicit threshold for 1 <= gamma <= 4.
BlowupVerdict check_blowup_line(const InitialDatum& datum, double gamma);

struct ComparisonOutcome {
  bool diverged = false;
  double blowup_time = 0.0;  ///< time at which |f| + |g| first exceeded the cap
  double bound = 0.0;        ///< 1/(c sqrt(f0 g0))
  int steps = 0;
  /// False if some evaluated right-hand side fell below c f g.
  bool dominance_held = true;
};

/// Right-hand side (f', g') of the comparison system at (t, f, g).
using FgRhs = std::function<std::pair<double, double>(double t, double f, double g)>;

struct ComparisonOptions {
  double cap = 1e10;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  /// Give up after this multiple of the bound.
  double horizon = 10.0;
};

/// Integrates f' = F, g' = G (adaptive Dormand-Prince) until |f| + |g| > cap.
ComparisonOutcome comparison_lemma_harness(double f0, double g0, double c, const FgRhs& rhs,
                                           const ComparisonOptions& opt = {});

struct SignInterval {
  std::size_t first = 0;  ///< grid index where the run starts
  std::size_t length = 0; ///< number of grid points (may wrap around)
  int sign = 1;           ///< +1 for u >= 0, -1 for u <= 0
  bool monotone = true;
  std::optional<double> violation_x;
};

struct FrameContinuity {
  std::size_t frame = 0;
  std::vector<SignInterval> intervals;
  std::size_t violations = 0;
  /// The frame vanishes somewhere without vanishing identically.
  bool vanishes_somewhere = false;
  bool identically_zero = false;
};

struct ContinuityReport {
  double gamma = 0.0;
  double beta = 0.0;
  std::vector<FrameContinuity> frames;
  std::size_t total_violations = 0;
  /// True when some frame would contradict global existence.
  bool contradiction = false;
  std::vector<std::string> notes;
};

/// For every frame, e^{beta x}u must be nondecreasing on runs where u >= 0
/// and e^{-beta x}u nondecreasing on runs where u <= 0 (mirrored for gamma < 0).
ContinuityReport unique_continuation_check(const std::vector<GridFunction>& frames, double gamma);
ContinuityReport unique_continuation_check(const std::vector<GridFunction>& frames, double gamma, double beta);

/// Conservative test that u0 = o(e^{-beta_gamma |x|}) on the line.
bool decay_blowup_test_line(const InitialDatum& datum, double gamma);

}  // namespace rodbreak

#endif
