// Initial data u_0 on the circle R/Z or on the line, with value and slope evaluators.
#ifndef RODBREAK_DATUM_HPP
#define RODBREAK_DATUM_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rodbreak/grid.hpp"

namespace rodbreak {

enum class DatumDomain { circle, line };

std::string to_string(DatumDomain d);

class InitialDatum {
 public:
  using Params = std::map<std::string, double>;

  /// Built-in families.  Circle: "sine" {a, k, c, shift}, "smoothed_peakon" {c, eps}.
  /// Line: "gaussian" {a, center, width}, "xgauss" {a}, "peakon" {c},
  /// "bump" {a, radius}, "sine_gaussian" {a, k}.  Missing parameters take defaults.
  static InitialDatum family(DatumDomain domain, const std::string& name, const Params& params);

  /// Circle datum u(x) = Re c_0 + 2 sum_{k>=1} Re(c_k e^{2 pi i k x}).
  static InitialDatum fourier(Spectrum coeffs);

  /// Circle datum from samples at x_j = j/N (N a power of two, N >= 64),
  /// interpolated spectrally.
  static InitialDatum samples(std::vector<double> values);

  DatumDomain domain() const { return domain_; }
  const std::string& name() const { return name_; }
  const Params& params() const { return params_; }

  double value(double x) const { return value_(x); }
  double derivative(double x) const { return derivative_(x); }

  /// Samples on the periodic grid of size n (circle data only).
  GridFunction sample(std::size_t n) const;

  /// Exact Fourier coefficients c_0..c_K when the datum is given spectrally.
  const std::optional<Spectrum>& spectrum() const { return spectrum_; }

  /// Resolution warnings (sampled data whose spectrum decays slower than k^-2).
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  DatumDomain domain_ = DatumDomain::circle;
  std::string name_;
  Params params_;
  std::function<double(double)> value_;
  std::function<double(double)> derivative_;
  std::optional<Spectrum> spectrum_;
  std::vector<std::string> warnings_;
};

}  // namespace rodbreak

#endif
