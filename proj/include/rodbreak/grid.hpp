// Discrete function representations and the real FFT wrapper.
#ifndef RODBREAK_GRID_HPP
#define RODBREAK_GRID_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace rodbreak {

using Spectrum = std::vector<std::complex<double>>;

/// Samples of a 1-periodic function on the uniform grid x_j = j/N, j = 0..N-1.
/// N is a power of two and at least 8.
class GridFunction {
 public:
  GridFunction() = default;
  explicit GridFunction(std::vector<double> values);

  template <class F>
  static GridFunction sample(std::size_t n, F&& f) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = f(static_cast<double>(j) / static_cast<double>(n));
    return GridFunction(std::move(v));
  }

  std::size_t size() const { return values_.size(); }
  double x(std::size_t j) const { return static_cast<double>(j) / static_cast<double>(size()); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const { return values_; }

  double max_abs() const;

 private:
  std::vector<double> values_;
};

/// Samples of a function on the closed interval [0,1] at x_i = i/n, i = 0..n.
struct IntervalSamples {
  std::vector<double> x;
  std::vector<double> values;

  std::size_t intervals() const { return x.empty() ? 0 : x.size() - 1; }
  double step() const { return 1.0 / static_cast<double>(intervals()); }
};

bool is_power_of_two(std::size_t n);

/// Forward/inverse real FFT of a fixed size, normalised so that the forward
/// transform returns Fourier coefficients c_k with f(x) = sum_k c_k e^{2 pi i k x}.
/// Only k = 0..N/2 are stored; negative modes follow from c_{-k} = conj(c_k).
///
/// Plans are created under a global lock; one instance must not be used from
/// several threads at once.
class RealFft {
 public:
  explicit RealFft(std::size_t n);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;
  RealFft(RealFft&&) noexcept;
  RealFft& operator=(RealFft&&) noexcept;

  std::size_t size() const { return n_; }

  Spectrum forward(std::span<const double> values);
  std::vector<double> inverse(std::span<const std::complex<double>> coeffs);

 private:
  void release();
  std::size_t n_ = 0;
  double* real_ = nullptr;
  void* complex_ = nullptr;
  void* plan_forward_ = nullptr;
  void* plan_inverse_ = nullptr;
};

/// Wavenumber 2*pi*k for the half spectrum index k.
inline double angular(std::size_t k) { return 2.0 * 3.14159265358979323846 * static_cast<double>(k); }

/// Spectral derivative of a periodic grid function.
GridFunction spectral_derivative(const GridFunction& f);

/// Band-limited interpolation of f onto a finer grid of size m >= f.size().
GridFunction spectral_resample(const GridFunction& f, std::size_t m);

/// Evaluate the trigonometric interpolant of the half spectrum at an arbitrary x.
double eval_spectrum(std::span<const std::complex<double>> coeffs, std::size_t n, double x);
double eval_spectrum_derivative(std::span<const std::complex<double>> coeffs, std::size_t n, double x);

}  // namespace rodbreak

#endif
