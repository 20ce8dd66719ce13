// Legendre functions of the first kind with complex degree, via the
// hypergeometric series 2F1(-nu, nu+1; 1; (1-z)/2).
#ifndef RODBREAK_SPECIAL_FUNCTIONS_HPP
#define RODBREAK_SPECIAL_FUNCTIONS_HPP

#include <complex>

namespace rodbreak {

/// Degree nu with nu(nu+1) = alpha, nu = -1/2 + sqrt(1+4 alpha)/2 taken in Im >= 0.
struct ComplexDegree {
  double alpha = 0.0;
  std::complex<double> nu{0.0, 0.0};

  static ComplexDegree from_alpha(double alpha);
  /// From an explicit degree; alpha is set to Re(nu(nu+1)).
  static ComplexDegree from_nu(std::complex<double> nu);
};

/// mu = sqrt(1 + 4 alpha)/2 in the closed upper half-plane.
std::complex<double> complex_mu(double alpha);

struct LegendreValue {
  double value = 0.0;
  double d1 = 0.0;  ///< dP/dz
  double d2 = 0.0;  ///< d^2P/dz^2
  int terms = 0;
};

/// P_nu(z) and its first two z-derivatives, for |1/2 - z/2| < 1.
LegendreValue legendre_series(const ComplexDegree& deg, double z);

double legendre_P(const ComplexDegree& deg, double z);
double legendre_P_dz(const ComplexDegree& deg, double z);

/// alpha -> P_{nu(alpha)}(cosh 1).
double legendre_at_cosh1(double alpha);

/// Largest zero alpha_0 of alpha -> P_{nu(alpha)}(cosh 1) (about -6.113).
double find_alpha0();

/// Cached alpha_0 (computed once, thread-safe).
double alpha0();

}  // namespace rodbreak

#endif
