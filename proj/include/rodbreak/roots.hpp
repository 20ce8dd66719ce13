// Bracketed scalar root finding and 1-D maximisation.
#ifndef RODBREAK_ROOTS_HPP
#define RODBREAK_ROOTS_HPP

#include <functional>
#include <optional>
#include <utility>

namespace rodbreak {

using ScalarFn = std::function<double(double)>;

struct RootOptions {
  double xtol = 1e-12;
  double ftol = 0.0;  ///< stop when |f| < ftol (0 disables)
  int max_iter = 200;
};

/// Safeguarded Newton on a sign-changing bracket [lo, hi]: a Newton step is
/// taken when it stays inside the bracket and shrinks it fast enough,
/// otherwise the bracket is bisected.  Throws NumericalError without a bracket.
double hybrid_newton(const ScalarFn& f, const ScalarFn& df, double lo, double hi, const RootOptions& opt = {});

/// Same, with the derivative replaced by a central difference of step h.
double hybrid_newton_fd(const ScalarFn& f, double lo, double hi, double h, const RootOptions& opt = {});

/// Plain bisection on a sign-changing bracket.
double bisect(const ScalarFn& f, double lo, double hi, double xtol, int max_iter = 200);

/// Golden-section search for a maximum of f on [lo, hi]; returns (argmax, max).
std::pair<double, double> golden_max(const ScalarFn& f, double lo, double hi, double xtol);

/// Scan [from, to] (either direction) with the given step and return the first
/// sub-interval where f changes sign, ordered as (a, b) with a < b.
std::optional<std::pair<double, double>> scan_for_sign_change(const ScalarFn& f, double from, double to,
                                                              double step);

}  // namespace rodbreak

#endif
