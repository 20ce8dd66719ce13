// The periodic Green kernel p of (1 - d^2/dx^2)^{-1}, its derivative, and the
// weight omega = p + beta p' used by the minimisation problems.
#ifndef RODBREAK_KERNEL_HPP
#define RODBREAK_KERNEL_HPP

#include <cmath>
#include <functional>

#include "rodbreak/common.hpp"
#include "rodbreak/grid.hpp"

namespace rodbreak {

/// p(x) = cosh(x - floor(x) - 1/2) / (2 sinh(1/2)); 1-periodic, strictly positive.
double eval_p(double x);

/// Classical derivative of p away from the lattice; throws DomainError at integers.
double eval_p_prime(double x);

/// One-sided limits of p' at an integer point: p'(0+) = -1/2, p'(0-) = +1/2.
double p_prime_right_limit();
double p_prime_left_limit();

/// Antiderivative of p on [0,1] with P(0) = 0.
double p_antiderivative(double x);

struct WeightSpec {
  double beta = 0.0;

  /// True iff omega = p + beta p' is nonnegative on (0,1).
  bool admissible() const;
};

/// omega(x) = p(x) + beta p'(x) for 0 < x < 1.  Throws DomainError for an
/// inadmissible beta ("weight changes sign") or x outside (0,1).
double eval_weight(const WeightSpec& spec, double x);

/// Evaluator for omega on the closed interval [0,1] (endpoint values are the
/// one-sided limits).  Construction validates admissibility.
class Weight {
 public:
  explicit Weight(double beta);

  double beta() const { return beta_; }
  double operator()(double x) const { return a_ * std::exp(x) + b_ * std::exp(-x); }
  double derivative(double x) const { return a_ * std::exp(x) - b_ * std::exp(-x); }
  /// Exact integral of omega over [lo, hi] within [0,1].
  double integral(double lo, double hi) const;

  /// omega = a e^x + b e^{-x} on (0,1).
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double beta_;
  double a_;
  double b_;
};

enum class KernelChoice { p, p_prime };

/// Periodic convolution p*f or p'*f on the grid of f, by Fourier multipliers
/// 1/(1+4 pi^2 k^2) and 2 pi i k/(1+4 pi^2 k^2).  Exact for band-limited f.
GridFunction convolve_periodic(const GridFunction& f, KernelChoice kernel);

/// Composite Simpson rule on 2^k + 1 equally spaced points.
double simpson(const std::function<double(double)>& f, double lo, double hi, int k);

}  // namespace rodbreak

#endif
