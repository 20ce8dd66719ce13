#include "rodbreak/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>

#include "rodbreak/common.hpp"

namespace rodbreak {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

double Extended::to_double() const {
  switch (kind_) {
    case Kind::finite:
      return value_;
    case Kind::minus_infinity:
      return -INFINITY;
    case Kind::plus_infinity:
      return INFINITY;
  }
  return value_;
}

std::string Extended::to_string() const {
  switch (kind_) {
    case Kind::minus_infinity:
      return "-inf";
    case Kind::plus_infinity:
      return "+inf";
    default:
      return std::to_string(value_);
  }
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

GridFunction::GridFunction(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 8 || !is_power_of_two(values_.size()))
    throw DomainError("grid size must be a power of two >= 8, got " + std::to_string(values_.size()));
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

RealFft::RealFft(std::size_t n) : n_(n) {
  if (n < 2 || !is_power_of_two(n))
    throw DomainError("FFT size must be a power of two, got " + std::to_string(n));
  std::lock_guard<std::mutex> lock(planner_mutex());
  real_ = fftw_alloc_real(n);
  auto* c = fftw_alloc_complex(n / 2 + 1);
  complex_ = c;
  plan_forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_, c, FFTW_ESTIMATE);
  plan_inverse_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), c, real_, FFTW_ESTIMATE);
}

void RealFft::release() {
  if (!real_) return;
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(plan_inverse_));
  fftw_free(real_);
  fftw_free(complex_);
  real_ = nullptr;
  complex_ = nullptr;
}

RealFft::~RealFft() { release(); }

RealFft::RealFft(RealFft&& o) noexcept
    : n_(o.n_), real_(o.real_), complex_(o.complex_), plan_forward_(o.plan_forward_),
      plan_inverse_(o.plan_inverse_) {
  o.real_ = nullptr;
  o.complex_ = nullptr;
}

RealFft& RealFft::operator=(RealFft&& o) noexcept {
  if (this != &o) {
    release();
    n_ = o.n_;
    real_ = o.real_;
    complex_ = o.complex_;
    plan_forward_ = o.plan_forward_;
    plan_inverse_ = o.plan_inverse_;
    o.real_ = nullptr;
    o.complex_ = nullptr;
  }
  return *this;
}

Spectrum RealFft::forward(std::span<const double> values) {
  if (values.size() != n_) throw std::invalid_argument("RealFft::forward: size mismatch");
  std::copy(values.begin(), values.end(), real_);
  fftw_execute(static_cast<fftw_plan>(plan_forward_));
  auto* c = static_cast<fftw_complex*>(complex_);
  Spectrum out(n_ / 2 + 1);
  const double scale = 1.0 / static_cast<double>(n_);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = {c[k][0] * scale, c[k][1] * scale};
  return out;
}

std::vector<double> RealFft::inverse(std::span<const std::complex<double>> coeffs) {
  if (coeffs.size() != n_ / 2 + 1) throw std::invalid_argument("RealFft::inverse: size mismatch");
  auto* c = static_cast<fftw_complex*>(complex_);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    c[k][0] = coeffs[k].real();
    c[k][1] = coeffs[k].imag();
  }
  // c2r ignores the imaginary parts of the k = 0 and Nyquist modes.
  fftw_execute(static_cast<fftw_plan>(plan_inverse_));
  return std::vector<double>(real_, real_ + n_);
}

GridFunction spectral_derivative(const GridFunction& f) {
  RealFft fft(f.size());
  Spectrum c = fft.forward(f.values());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] *= std::complex<double>(0.0, angular(k));
  c.back() = 0.0;  // Nyquist mode has no well-defined real derivative
  return GridFunction(fft.inverse(c));
}

GridFunction spectral_resample(const GridFunction& f, std::size_t m) {
  const std::size_t n = f.size();
  if (m < n) throw std::invalid_argument("spectral_resample: target grid must not be coarser");
  RealFft small(n);
  Spectrum c = small.forward(f.values());
  Spectrum padded(m / 2 + 1, 0.0);
  std::copy(c.begin(), c.end(), padded.begin());
  if (m > n) padded[n / 2] *= 0.5;  // split the old Nyquist mode between +-N/2
  RealFft big(m);
  return GridFunction(big.inverse(padded));
}

double eval_spectrum(std::span<const std::complex<double>> coeffs, std::size_t n, double x) {
  const std::size_t nyq = n / 2;
  double s = coeffs[0].real();
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    const double th = angular(k) * x;
    const double w = (k == nyq) ? 1.0 : 2.0;
    s += w * (coeffs[k].real() * std::cos(th) - coeffs[k].imag() * std::sin(th));
  }
  return s;
}

double eval_spectrum_derivative(std::span<const std::complex<double>> coeffs, std::size_t n, double x) {
  const std::size_t nyq = n / 2;
  double s = 0.0;
  for (std::size_t k = 1; k < coeffs.size() && k < nyq; ++k) {
    const double th = angular(k) * x;
    s += 2.0 * angular(k) * (-coeffs[k].real() * std::sin(th) - coeffs[k].imag() * std::cos(th));
  }
  return s;
}

}  // namespace rodbreak
