#include "rodbreak/datum.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include "rodbreak/common.hpp"

namespace rodbreak {

namespace {

double param(const InitialDatum::Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

void reject_unknown(const InitialDatum::Params& p, std::initializer_list<const char*> known, const std::string& family) {
  for (const auto& [key, value] : p) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; }))
      throw DomainError("unknown parameter '" + key + "' for family '" + family + "'");
    if (!std::isfinite(value)) throw DomainError("parameter '" + key + "' must be finite");
  }
}

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

std::string to_string(DatumDomain d) { return d == DatumDomain::circle ? "circle" : "line"; }

InitialDatum InitialDatum::family(DatumDomain domain, const std::string& name, const Params& params) {
  InitialDatum d;
  d.domain_ = domain;
  d.name_ = name;
  d.params_ = params;
  if (domain == DatumDomain::circle && name == "sine") {
    reject_unknown(params, {"a", "k", "c", "shift"}, name);
    const double a = param(params, "a", 1.0), c = param(params, "c", 0.0), s = param(params, "shift", 0.0);
    const double kd = param(params, "k", 1.0);
    if (kd < 1.0 || kd != std::floor(kd)) throw DomainError("sine: k must be a positive integer");
    const double w = 2.0 * kPi * kd;
    d.value_ = [=](double x) { return a * std::sin(w * (x - s)) + c; };
    d.derivative_ = [=](double x) { return a * w * std::cos(w * (x - s)); };
    return d;
  }
  if (domain == DatumDomain::circle && name == "smoothed_peakon") {
    reject_unknown(params, {"c", "eps"}, name);
    const double c = param(params, "c", 1.0), eps = param(params, "eps", 0.05);
    if (!(eps >= 1e-3)) throw DomainError("smoothed_peakon: eps must be at least 1e-3");
    Spectrum coeffs{c};
    for (int k = 1;; ++k) {
      const double w = 2.0 * kPi * k;
      const double ck = c * std::exp(-0.5 * w * w * eps * eps) / (1.0 + w * w);
      if (std::abs(ck) < 1e-17 * std::max(std::abs(c), 1e-300)) break;
      coeffs.emplace_back(ck, 0.0);
    }
    InitialDatum f = fourier(std::move(coeffs));
    f.name_ = name;
    f.params_ = params;
    return f;
  }
  if (domain == DatumDomain::line && name == "gaussian") {
    reject_unknown(params, {"a", "center", "width"}, name);
    const double a = param(params, "a", 1.0), x0 = param(params, "center", 0.0), w = param(params, "width", 1.0);
    if (!(w > 0.0)) throw DomainError("gaussian: width must be positive");
    d.value_ = [=](double x) { return a * std::exp(-((x - x0) / w) * ((x - x0) / w)); };
    d.derivative_ = [=](double x) {
      const double z = (x - x0) / w;
      return -2.0 * a * z / w * std::exp(-z * z);
    };
    return d;
  }
  if (domain == DatumDomain::line && name == "xgauss") {
    reject_unknown(params, {"a"}, name);
    const double a = param(params, "a", 1.0);
    d.value_ = [=](double x) { return a * x * std::exp(-x * x); };
    d.derivative_ = [=](double x) { return a * (1.0 - 2.0 * x * x) * std::exp(-x * x); };
    return d;
  }
  if (domain == DatumDomain::line && name == "peakon") {
    reject_unknown(params, {"c"}, name);
    const double c = param(params, "c", 1.0);
    d.value_ = [=](double x) { return c * std::exp(-std::abs(x)); };
    d.derivative_ = [=](double x) { return -c * sign0(x) * std::exp(-std::abs(x)); };
    return d;
  }
  if (domain == DatumDomain::line && name == "bump") {
    reject_unknown(params, {"a", "radius"}, name);
    const double a = param(params, "a", 1.0), r = param(params, "radius", 1.0);
    if (!(r > 0.0)) throw DomainError("bump: radius must be positive");
    d.value_ = [=](double x) {
      const double z = x / r;
      return std::abs(z) < 1.0 ? a * std::exp(-1.0 / (1.0 - z * z)) : 0.0;
    };
    d.derivative_ = [=](double x) {
      const double z = x / r;
      if (std::abs(z) >= 1.0) return 0.0;
      const double q = 1.0 - z * z;
      return a * std::exp(-1.0 / q) * (-2.0 * z / (q * q)) / r;
    };
    return d;
  }
  if (domain == DatumDomain::line && name == "sine_gaussian") {
    reject_unknown(params, {"a", "k"}, name);
    const double a = param(params, "a", 1.0), k = param(params, "k", 1.0);
    const double w = 2.0 * kPi * k;
    d.value_ = [=](double x) { return a * std::sin(w * x) * std::exp(-x * x); };
    d.derivative_ = [=](double x) { return a * (w * std::cos(w * x) - 2.0 * x * std::sin(w * x)) * std::exp(-x * x); };
    return d;
  }
  throw DomainError("unknown " + to_string(domain) + " family '" + name + "'");
}

InitialDatum InitialDatum::fourier(Spectrum coeffs) {
  if (coeffs.empty()) throw DomainError("fourier datum needs at least one coefficient");
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw DomainError("fourier coefficients must be finite");
  coeffs[0] = {coeffs[0].real(), 0.0};
  InitialDatum d;
  d.domain_ = DatumDomain::circle;
  d.name_ = "fourier";
  const std::size_t n = 2 * coeffs.size() + 2;  // keeps every stored mode below the Nyquist index
  auto shared = std::make_shared<const Spectrum>(coeffs);
  d.value_ = [shared, n](double x) { return eval_spectrum(*shared, n, x); };
  d.derivative_ = [shared, n](double x) { return eval_spectrum_derivative(*shared, n, x); };
  d.spectrum_ = std::move(coeffs);
  return d;
}

InitialDatum InitialDatum::samples(std::vector<double> values) {
  const std::size_t n = values.size();
  if (n < 64 || !is_power_of_two(n)) throw DomainError("sampled datum needs a power-of-two number of samples >= 64");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError("sampled datum contains non-finite values");
  RealFft fft(n);
  auto shared = std::make_shared<const Spectrum>(fft.forward(values));
  InitialDatum d;
  d.domain_ = DatumDomain::circle;
  d.name_ = "samples";
  d.value_ = [shared, n](double x) { return eval_spectrum(*shared, n, x); };
  d.derivative_ = [shared, n](double x) { return eval_spectrum_derivative(*shared, n, x); };
  // |c_k| k^2 should stay bounded; compare the upper half of the spectrum with the lower eighth
  double low = 0.0, high = 0.0;
  for (std::size_t k = 1; k <= n / 2; ++k) {
    const double q = std::abs((*shared)[k]) * static_cast<double>(k * k);
    if (k <= n / 8) low = std::max(low, q);
    if (k > n / 4) high = std::max(high, q);
  }
  if (high > 10.0 * low + 1e-12 * (1.0 + std::abs((*shared)[0])))
    d.warnings_.push_back("sampled datum is under-resolved: Fourier coefficients decay slower than k^-2");
  return d;
}

GridFunction InitialDatum::sample(std::size_t n) const {
  if (domain_ != DatumDomain::circle) throw DomainError("only circle data can be sampled on the periodic grid");
  return GridFunction::sample(n, [this](double x) { return value_(x); });
}

}  // namespace rodbreak
