#include "rodbreak/roots.hpp"

#include <cmath>

#include "rodbreak/common.hpp"

namespace rodbreak {

double hybrid_newton(const ScalarFn& f, const ScalarFn& df, double lo, double hi, const RootOptions& opt) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("hybrid_newton: root is not bracketed");
  // orient so that f(xl) < 0 < f(xh)
  double xl = flo < 0.0 ? lo : hi;
  double xh = flo < 0.0 ? hi : lo;
  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo);
  double dx = dx_old;
  double fx = f(x);
  double dfx = df(x);
  for (int it = 0; it < opt.max_iter; ++it) {
    if (fx == 0.0 || (opt.ftol > 0.0 && std::abs(fx) < opt.ftol)) return x;
    const bool newton_out = ((x - xh) * dfx - fx) * ((x - xl) * dfx - fx) > 0.0;
    const bool too_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
    dx_old = dx;
    if (newton_out || too_slow || !std::isfinite(dfx) || dfx == 0.0) {
      dx = 0.5 * (xh - xl);
      x = xl + dx;
    } else {
      dx = fx / dfx;
      x -= dx;
    }
    fx = f(x);
    if (std::abs(dx) < opt.xtol) return x;
    dfx = df(x);
    if (fx < 0.0)
      xl = x;
    else
      xh = x;
  }
  return x;
}

double hybrid_newton_fd(const ScalarFn& f, double lo, double hi, double h, const RootOptions& opt) {
  auto df = [&](double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
  return hybrid_newton(f, df, lo, hi, opt);
}

double bisect(const ScalarFn& f, double lo, double hi, double xtol, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw NumericalError("bisect: root is not bracketed");
  for (int it = 0; it < max_iter && std::abs(hi - lo) > xtol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> golden_max(const ScalarFn& f, double lo, double hi, double xtol) {
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - r * (hi - lo);
  double d = lo + r * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (std::abs(hi - lo) > xtol) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - r * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + r * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  return {x, f(x)};
}

std::optional<std::pair<double, double>> scan_for_sign_change(const ScalarFn& f, double from, double to,
                                                              double step) {
  const double dir = to >= from ? 1.0 : -1.0;
  const long n = static_cast<long>(std::ceil(std::abs(to - from) / step));
  double x_prev = from;
  double f_prev = f(from);
  for (long i = 1; i <= n; ++i) {
    const double x = (i == n) ? to : from + dir * step * static_cast<double>(i);
    const double fx = f(x);
    if ((f_prev > 0.0) != (fx > 0.0) || fx == 0.0) return std::pair{std::min(x_prev, x), std::max(x_prev, x)};
    x_prev = x;
    f_prev = fx;
  }
  return std::nullopt;
}

}  // namespace rodbreak
