#include "rodbreak/special_functions.hpp"

#include <cmath>
#include <string>

#include "rodbreak/common.hpp"
#include "rodbreak/roots.hpp"

namespace rodbreak {

namespace {
constexpr int kMaxTerms = 500;
constexpr double kRelTail = 1e-14;
constexpr double kImagTol = 1e-10;

std::complex<double> upper_sqrt(double v) {
  // principal sqrt already lies in Re >= 0; for negative v it is i*sqrt(|v|)
  return v >= 0.0 ? std::complex<double>(std::sqrt(v), 0.0) : std::complex<double>(0.0, std::sqrt(-v));
}

double checked_real(std::complex<double> v, double scale, const char* what) {
  if (std::abs(v.imag()) > kImagTol * std::max(1.0, scale))
    throw NumericalError(std::string("Legendre series: non-negligible imaginary part in ") + what);
  return v.real();
}
}  // namespace

ComplexDegree ComplexDegree::from_alpha(double alpha) {
  return {alpha, -0.5 + 0.5 * upper_sqrt(1.0 + 4.0 * alpha)};
}

ComplexDegree ComplexDegree::from_nu(std::complex<double> nu) { return {(nu * (nu + 1.0)).real(), nu}; }

std::complex<double> complex_mu(double alpha) { return 0.5 * upper_sqrt(1.0 + 4.0 * alpha); }

LegendreValue legendre_series(const ComplexDegree& deg, double z) {
  const double w = 0.5 - 0.5 * z;
  if (!(std::abs(w) < 1.0)) throw DomainError("Legendre series needs |1/2 - z/2| < 1");

  const std::complex<double> nu = deg.nu;
  // coefficient c_k of w^k; c_{k+1} = c_k (k - nu)(k + nu + 1)/(k+1)^2
  std::complex<double> c = 1.0;
  std::complex<double> s0 = 1.0, s1 = 0.0, s2 = 0.0;
  double wk = 1.0;    // w^k
  double wkm1 = 0.0;  // w^(k-1)
  double wkm2 = 0.0;  // w^(k-2)
  double scale = 1.0;
  int k = 0;
  for (; k < kMaxTerms; ++k) {
    const double kd = static_cast<double>(k);
    c *= (kd - nu) * (kd + nu + 1.0) / ((kd + 1.0) * (kd + 1.0));
    wkm2 = wkm1;
    wkm1 = wk;
    wk *= w;
    const double n = kd + 1.0;
    const std::complex<double> t0 = c * wk;
    const std::complex<double> t1 = c * (n * wkm1);
    const std::complex<double> t2 = c * (n * (n - 1.0) * wkm2);
    s0 += t0;
    s1 += t1;
    s2 += t2;
    scale = std::max({scale, std::abs(t0), std::abs(t1), std::abs(t2)});
    const double tail = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
    if (tail < kRelTail * std::max({std::abs(s0), std::abs(s1), std::abs(s2), 1e-300}) && k >= 2) {
      ++k;
      break;
    }
    if (c == std::complex<double>(0.0)) {
      ++k;
      break;  // polynomial case
    }
  }
  LegendreValue out;
  out.value = checked_real(s0, scale, "P");
  // d/dz = -1/2 d/dw
  out.d1 = -0.5 * checked_real(s1, scale, "P'");
  out.d2 = 0.25 * checked_real(s2, scale, "P''");
  out.terms = k + 1;
  return out;
}

double legendre_P(const ComplexDegree& deg, double z) { return legendre_series(deg, z).value; }

double legendre_P_dz(const ComplexDegree& deg, double z) { return legendre_series(deg, z).d1; }

double legendre_at_cosh1(double alpha) { return legendre_P(ComplexDegree::from_alpha(alpha), std::cosh(1.0)); }

double find_alpha0() {
  // P_{nu(0)} = 1 > 0; walk left until the first sign change.
  auto bracket = scan_for_sign_change(legendre_at_cosh1, 0.0, -10.0, 0.05);
  if (!bracket) throw NumericalError("find_alpha0: no sign change of P_nu(alpha)(cosh 1) on [-10, 0]");
  RootOptions opt;
  opt.xtol = 1e-15;
  opt.ftol = 1e-12;
  return hybrid_newton_fd(legendre_at_cosh1, bracket->first, bracket->second, 1e-6, opt);
}

double alpha0() {
  static const double value = find_alpha0();
  return value;
}

}  // namespace rodbreak
