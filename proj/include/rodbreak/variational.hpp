// The minimisation problem
//
//   I(alpha, beta) = inf { int_0^1 (p + beta p')(alpha u^2 + u_x^2) dx : u in H^1, u(0) = u(1) = 1 },
//
// its closed forms (beta = 1, beta = (e+1)/(e-1), alpha = 2), the finite
// difference Euler-Lagrange solver used everywhere else, and the weighted
// Poincare constants that decide when I is finite.
#ifndef RODBREAK_VARIATIONAL_HPP
#define RODBREAK_VARIATIONAL_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rodbreak/common.hpp"
#include "rodbreak/grid.hpp"

namespace rodbreak {

struct MinProblem {
  double alpha = 0.0;
  double beta = 0.0;
};

enum class MinMethod { closed_form_beta1, closed_form_limit, closed_form_alpha2, finite_difference };

std::string to_string(MinMethod m);

struct MinResult {
  MinProblem problem;
  Extended value = Extended::finite(0.0);
  /// Samples of the minimiser u = 1 + v on [0,1]; empty when value is -inf.
  IntervalSamples minimizer;
  MinMethod method = MinMethod::finite_difference;
  double error_estimate = 0.0;
  /// False only in the limit weight case where u(0) is not pinned.
  bool left_pinned = true;
  bool right_pinned = true;
  /// Smallest Poincare eigenvalue, reported when it decided finiteness.
  std::optional<double> lambda_min;
  std::vector<std::string> warnings;
};

/// Closed form for beta = 1, valid for alpha > -1/4 - pi^2 (else -inf).
MinResult closed_form_I_beta1(double alpha, int intervals = 1024);

/// Closed form in the limit case beta = (e+1)/(e-1) via Legendre functions,
/// finite iff alpha > alpha_0.
MinResult closed_form_I_limit(double alpha, int intervals = 1024);

/// Explicit solution for alpha = 2 and 0 <= beta <= (e+1)/(e-1).
MinResult closed_form_I2(double beta, int intervals = 1024);

/// int_0^x omega^{-3} for the weight with the given beta, 0 <= beta < (e+1)/(e-1).
double inverse_cube_weight_integral(double beta, double x);

/// Second-order conservative finite differences for (omega v')' - alpha omega v = alpha omega,
/// v(0) = v(1) = 0, solved at n and 2n intervals and Richardson-extrapolated.
MinResult solve_el_fd(const MinProblem& problem, int n);

/// Grid used by eval_I for the finite-difference route (RODBREAK_GRID or 4096).
int default_fd_grid();

/// Dispatcher: parity in beta, then a closed form when one applies, else FD.
MinResult eval_I(const MinProblem& problem, std::optional<int> grid = std::nullopt);

struct PoincareConstant {
  double beta = 0.0;
  double C = 0.0;
  double lambda_min = 0.0;
  /// -1/alpha_0, reported in the limit weight cases.
  std::optional<double> limit_crosscheck;
};

/// Best constant in int omega v^2 <= C int omega v_x^2 for the weight p + beta p'.
PoincareConstant poincare_best_constant(double beta);

/// Smallest eigenvalue of -(w v')' = lambda w v on (0,1) discretised with
/// the conservative stencil on n intervals.  A "natural" end has no Dirichlet
/// condition (used where the weight vanishes).
double smallest_sturm_liouville_eigenvalue(const std::function<double(double)>& weight, int n,
                                           bool natural_left = false, bool natural_right = false);

/// max over interior nodes of |(omega u')' - alpha omega u| for samples of u.
double el_residual(const MinProblem& problem, const IntervalSamples& u);

/// min over x of (p + beta p') * (alpha u^2 + u_x^2)(x) - I(alpha, beta) u(x)^2
/// for a smooth periodic u; nonnegative up to discretisation error.
double convolution_estimate_check(const MinProblem& problem, const GridFunction& u);
double convolution_estimate_check(const MinProblem& problem, const GridFunction& u, double I_value);

}  // namespace rodbreak

#endif
