#include "rodbreak/kernel.hpp"

#include <cmath>

namespace rodbreak {

namespace {
const double kTwoSinhHalf = 2.0 * std::sinh(0.5);

double frac(double x) { return x - std::floor(x); }
}  // namespace

double eval_p(double x) { return std::cosh(frac(x) - 0.5) / kTwoSinhHalf; }

double eval_p_prime(double x) {
  if (!std::isfinite(x)) throw DomainError("p' requires a finite argument");
  if (x == std::floor(x)) throw DomainError("derivative undefined at lattice points");
  return std::sinh(frac(x) - 0.5) / kTwoSinhHalf;
}

double p_prime_right_limit() { return -0.5; }
double p_prime_left_limit() { return 0.5; }

double p_antiderivative(double x) { return (std::sinh(x - 0.5) + std::sinh(0.5)) / kTwoSinhHalf; }

bool WeightSpec::admissible() const { return std::isfinite(beta) && std::abs(beta) <= kBetaLimit * (1.0 + 1e-15); }

double eval_weight(const WeightSpec& spec, double x) {
  if (!spec.admissible()) throw DomainError("weight changes sign: |beta| > (e+1)/(e-1)");
  if (!(x > 0.0 && x < 1.0)) throw DomainError("weight is evaluated on the open interval (0,1)");
  return Weight(spec.beta)(x);
}

Weight::Weight(double beta) : beta_(beta) {
  if (!WeightSpec{beta}.admissible()) throw DomainError("weight changes sign: |beta| > (e+1)/(e-1)");
  a_ = (1.0 + beta) / (2.0 * (kE - 1.0));
  b_ = (1.0 - beta) * kE / (2.0 * (kE - 1.0));
}

double Weight::integral(double lo, double hi) const {
  return a_ * (std::exp(hi) - std::exp(lo)) - b_ * (std::exp(-hi) - std::exp(-lo));
}

GridFunction convolve_periodic(const GridFunction& f, KernelChoice kernel) {
  RealFft fft(f.size());
  Spectrum c = fft.forward(f.values());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double w = angular(k);
    const double m = 1.0 / (1.0 + w * w);
    if (kernel == KernelChoice::p)
      c[k] *= m;
    else
      c[k] *= std::complex<double>(0.0, w * m);
  }
  if (kernel == KernelChoice::p_prime) c.back() = 0.0;
  return GridFunction(fft.inverse(c));
}

double simpson(const std::function<double(double)>& f, double lo, double hi, int k) {
  if (k < 1) throw std::invalid_argument("simpson: need at least 3 points");
  const long n = 1L << k;
  const double h = (hi - lo) / static_cast<double>(n);
  double s = f(lo) + f(hi);
  for (long i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + h * static_cast<double>(i));
  return s * h / 3.0;
}

}  // namespace rodbreak
