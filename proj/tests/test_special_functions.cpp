#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rodbreak/special_functions.hpp"
#include "rodbreak/variational.hpp"
#include "support.hpp"

using namespace rodbreak;
using rodbreak::testing::Rng;

namespace {

// Independent evaluation of 2F1(-nu, nu+1; 1; (1-z)/2) in complex arithmetic, without truncating to real.
std::complex<double> hypergeometric_oracle(std::complex<double> nu, double z) {
  const double w = (1.0 - z) / 2.0;
  std::complex<double> term = 1.0, sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (static_cast<double>(k) - nu) * (static_cast<double>(k) + nu + 1.0) / ((k + 1.0) * (k + 1.0)) * w;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("complex mu") {
  CHECK(complex_mu(2.0) == std::complex<double>(1.5, 0.0));
  CHECK(std::abs(complex_mu(-0.25)) < 1e-15);
  const auto m = complex_mu(-1.0);
  CHECK(std::abs(m.real()) < 1e-15);
  CHECK(m.imag() == doctest::Approx(std::sqrt(3.0) / 2.0));
  Rng rng(21);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-20.0, 20.0);
    const auto mu = complex_mu(a);
    CHECK(mu.imag() >= 0.0);
    CHECK(std::abs(mu * mu - (1.0 + 4.0 * a) / 4.0) < 1e-12 * std::max(1.0, std::abs(a)));
  }
}

TEST_CASE("degree identity and branch") {
  Rng rng(22);
  for (int i = 0; i < 100; ++i) {
    const double a = rng.uniform(-10.0, 10.0);
    const ComplexDegree d = ComplexDegree::from_alpha(a);
    CHECK(std::abs(d.nu * (d.nu + 1.0) - a) < 1e-12 * std::max(1.0, std::abs(a)));
    CHECK(d.nu.imag() >= 0.0);
    if (a >= -0.25) {
      CHECK(d.nu.imag() == 0.0);
      CHECK(d.nu.real() >= -0.5);
    }
  }
}

TEST_CASE("Legendre examples") {
  const double c1 = std::cosh(1.0);
  CHECK(legendre_P(ComplexDegree::from_nu(0.0), c1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(legendre_P(ComplexDegree::from_nu(1.0), c1) == doctest::Approx(c1).epsilon(1e-14));
  CHECK(legendre_P(ComplexDegree::from_alpha(2.0), c1) == doctest::Approx(1.54308).epsilon(1e-5));
  CHECK(std::abs(legendre_P(ComplexDegree::from_alpha(find_alpha0()), c1)) < 1e-11);
  for (double z : {-0.5, 0.0, 0.3, 1.2, c1, 2.5}) {
    CHECK(legendre_P_dz(ComplexDegree::from_nu(1.0), z) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(legendre_P_dz(ComplexDegree::from_nu(0.0), z)) < 1e-15);
    CHECK(legendre_P(ComplexDegree::from_nu(2.0), z) == doctest::Approx((3 * z * z - 1) / 2).epsilon(1e-12).scale(1));
    CHECK(legendre_P(ComplexDegree::from_nu(3.0), z) == doctest::Approx((5 * z * z * z - 3 * z) / 2).epsilon(1e-12).scale(1));
  }
  CHECK(legendre_P_dz(ComplexDegree::from_alpha(2.0), c1) / legendre_P(ComplexDegree::from_alpha(2.0), c1) ==
        doctest::Approx(1.0 / c1).epsilon(1e-13));
  CHECK(1.0 / c1 == doctest::Approx(0.64805).epsilon(1e-5));
}

TEST_CASE("outside the convergence disc") {
  CHECK_THROWS_AS(legendre_P(ComplexDegree::from_alpha(1.0), 3.0), DomainError);
  CHECK_THROWS_AS(legendre_P(ComplexDegree::from_alpha(1.0), -1.0), DomainError);
  CHECK_THROWS_AS(legendre_P_dz(ComplexDegree::from_alpha(1.0), 4.0), DomainError);
}

TEST_CASE("series agrees with a complex-arithmetic oracle and is real") {
  Rng rng(23);
  for (int i = 0; i < 40; ++i) {
    const double a = rng.uniform(-8.0, 8.0);
    const double z = rng.uniform(-0.9, 2.9);
    const ComplexDegree d = ComplexDegree::from_alpha(a);
    const std::complex<double> o = hypergeometric_oracle(d.nu, z);
    CHECK(std::abs(o.imag()) < 1e-10);
    CHECK(legendre_P(d, z) == doctest::Approx(o.real()).epsilon(1e-11).scale(1));
  }
}

TEST_CASE("derivative agrees with central differences") {
  Rng rng(24);
  for (int i = 0; i < 30; ++i) {
    const double a = rng.uniform(-8.0, 8.0);
    const double z = rng.uniform(0.0, std::cosh(1.0));
    const ComplexDegree d = ComplexDegree::from_alpha(a);
    const double h = 1e-5;
    const double fd = (legendre_P(d, z + h) - legendre_P(d, z - h)) / (2 * h);
    CHECK(std::abs(legendre_P_dz(d, z) - fd) < 1e-7);
  }
}

TEST_CASE("Legendre differential equation") {
  Rng rng(25);
  for (int i = 0; i < 20; ++i) {
    const double a = rng.uniform(-8.0, 8.0);
    const double z = rng.uniform(1e-6, std::cosh(1.0));
    const LegendreValue v = legendre_series(ComplexDegree::from_alpha(a), z);
    const double residual = (1 - z * z) * v.d2 - 2 * z * v.d1 + a * v.value;
    CHECK_MESSAGE(std::abs(residual) < 1e-8, "alpha = " << a << ", z = " << z);
  }
}

TEST_CASE("alpha_0") {
  const double a0 = find_alpha0();
  CHECK(a0 == doctest::Approx(-6.113).epsilon(1e-3 / 6.113));
  CHECK(a0 == alpha0());
  CHECK(std::abs(legendre_at_cosh1(a0)) < 1e-12);
  CHECK(legendre_at_cosh1(-6.0) * legendre_at_cosh1(-6.2) < 0.0);
  // largest zero: no sign change between alpha_0 and 0
  double prev = legendre_at_cosh1(a0 + 1e-3);
  for (double a = a0 + 0.05; a <= 0.0; a += 0.05) {
    const double cur = legendre_at_cosh1(a);
    CHECK(prev * cur > 0.0);
    prev = cur;
  }
  // eigenvalue oracle: the Poincare constant of the limit weight is -1/alpha_0
  const PoincareConstant pc = poincare_best_constant(kBetaLimit);
  CHECK(pc.C == doctest::Approx(-1.0 / a0).epsilon(1e-6));
  CHECK(-1.0 / a0 == doctest::Approx(0.164).epsilon(1e-3 / 0.164));
}
