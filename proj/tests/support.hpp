// Shared oracles and generators for the test suites.
#ifndef RODBREAK_TESTS_SUPPORT_HPP
#define RODBREAK_TESTS_SUPPORT_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rodbreak/grid.hpp"

namespace rodbreak::testing {

/// Adaptive Gauss-Kronrod (61 points) with a relative tolerance.
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-13) {
  double err = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 8, tol, &err);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen_); }

 private:
  std::mt19937_64 gen_;
};

/// Random trigonometric polynomial sum_k (a_k cos 2 pi k x + b_k sin 2 pi k x) + c
/// with |a_k|, |b_k| <= 1/k^2 and k <= modes.
struct SmoothPeriodic {
  double c = 0.0;
  std::vector<double> a, b;

  static SmoothPeriodic random(Rng& rng, int modes) {
    SmoothPeriodic s;
    s.c = rng.uniform(-1.0, 1.0);
    for (int k = 1; k <= modes; ++k) {
      s.a.push_back(rng.uniform(-1.0, 1.0) / (k * k));
      s.b.push_back(rng.uniform(-1.0, 1.0) / (k * k));
    }
    return s;
  }
  double operator()(double x) const {
    double v = c;
    for (std::size_t k = 1; k <= a.size(); ++k) {
      const double t = 2.0 * M_PI * static_cast<double>(k) * x;
      v += a[k - 1] * std::cos(t) + b[k - 1] * std::sin(t);
    }
    return v;
  }
  double derivative(double x) const {
    double v = 0.0;
    for (std::size_t k = 1; k <= a.size(); ++k) {
      const double w = 2.0 * M_PI * static_cast<double>(k);
      v += w * (-a[k - 1] * std::sin(w * x) + b[k - 1] * std::cos(w * x));
    }
    return v;
  }
  GridFunction sample(std::size_t n) const {
    return GridFunction::sample(n, [this](double x) { return (*this)(x); });
  }
};

}  // namespace rodbreak::testing

#endif
