#include "rodbreak/variational.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>

#include "rodbreak/kernel.hpp"
#include "rodbreak/special_functions.hpp"

namespace rodbreak {

namespace {

const double kCoshHalf = std::cosh(0.5);
const double kSinhHalf = std::sinh(0.5);

bool is_limit_beta(double beta) { return std::abs(std::abs(beta) - kBetaLimit) <= 1e-12; }

IntervalSamples sample_interval(int intervals, const std::function<double(double)>& f) {
  IntervalSamples s;
  s.x.resize(static_cast<std::size_t>(intervals) + 1);
  s.values.resize(s.x.size());
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    s.x[i] = static_cast<double>(i) / intervals;
    s.values[i] = f(s.x[i]);
  }
  return s;
}

IntervalSamples reflect(IntervalSamples s) {
  std::reverse(s.values.begin(), s.values.end());
  return s;
}

// sinh(mu x)/sinh(mu) for real or purely imaginary mu, continuous through mu = 0.
double sinh_ratio(std::complex<double> mu, double x) {
  if (std::abs(mu) < 1e-4) {
    const double m2 = (mu * mu).real();
    return x * (1.0 + m2 * (x * x - 1.0) / 6.0);
  }
  return (std::sinh(mu * x) / std::sinh(mu)).real();
}

// ---------------------------------------------------------------------------
// Symmetric tridiagonal systems from the conservative stencil.

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples unknowns i and i+1
};

struct LdlResult {
  std::vector<double> solution;
  int negative_pivots = 0;
};

int count_negative_pivots(const Tridiagonal& t, const std::vector<double>& mass, double shift) {
  // inertia of (diag + shift*mass, off): number of eigenvalues of the pencil below -shift
  int neg = 0;
  double d = t.diag[0] + shift * mass[0];
  if (d < 0.0) ++neg;
  for (std::size_t i = 1; i < t.diag.size(); ++i) {
    if (d == 0.0) d = 1e-300;
    d = t.diag[i] + shift * mass[i] - t.off[i - 1] * t.off[i - 1] / d;
    if (d < 0.0) ++neg;
  }
  return neg;
}

LdlResult ldl_solve(const Tridiagonal& t, const std::vector<double>& rhs) {
  const std::size_t n = t.diag.size();
  std::vector<double> d(n), l(n, 0.0), y(n);
  LdlResult out;
  d[0] = t.diag[0];
  y[0] = rhs[0];
  for (std::size_t i = 1; i < n; ++i) {
    l[i] = t.off[i - 1] / d[i - 1];
    d[i] = t.diag[i] - l[i] * t.off[i - 1];
    y[i] = rhs[i] - l[i] * y[i - 1];
  }
  for (double v : d)
    if (v < 0.0) ++out.negative_pivots;
  out.solution.resize(n);
  out.solution[n - 1] = y[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) out.solution[i] = y[i] / d[i] - l[i + 1] * out.solution[i + 1];
  return out;
}

// Smallest eigenvalue of the pencil (t, diag(mass)) via LAPACK bisection.
double smallest_pencil_eigenvalue(const Tridiagonal& t, const std::vector<double>& mass) {
  const auto n = static_cast<lapack_int>(t.diag.size());
  std::vector<double> d(t.diag.size()), e(t.off.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = t.diag[i] / mass[i];
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = t.off[i] / std::sqrt(mass[i] * mass[i + 1]);
  lapack_int m = 0, nsplit = 0;
  double w[1];
  std::vector<lapack_int> iblock(d.size()), isplit(d.size());
  const lapack_int info = LAPACKE_dstebz('I', 'E', n, 0.0, 0.0, 1, 1, 0.0, d.data(), e.data(), &m, &nsplit, w,
                                         iblock.data(), isplit.data());
  if (info != 0 || m < 1) throw NumericalError("dstebz failed for the Poincare eigenvalue");
  return w[0];
}

struct FdSystem {
  Tridiagonal stiffness;      // -(omega v')' on interior nodes, no alpha term
  std::vector<double> mass;   // omega at interior nodes
  std::vector<double> nodes;  // omega at all nodes 0..n
  double h = 0.0;
};

FdSystem assemble_dirichlet(const Weight& w, int n) {
  FdSystem s;
  s.h = 1.0 / n;
  const double h2 = s.h * s.h;
  const std::size_t m = static_cast<std::size_t>(n) - 1;
  s.nodes.resize(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) s.nodes[static_cast<std::size_t>(i)] = w(i * s.h);
  std::vector<double> mid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) mid[static_cast<std::size_t>(i)] = w((i + 0.5) * s.h);
  s.stiffness.diag.resize(m);
  s.stiffness.off.resize(m - 1);
  s.mass.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    s.stiffness.diag[i] = (mid[i] + mid[i + 1]) / h2;
    s.mass[i] = s.nodes[i + 1];
    if (i + 1 < m) s.stiffness.off[i] = -mid[i + 1] / h2;
  }
  return s;
}

struct FdLevel {
  bool definite = true;
  bool near_threshold = false;
  double quad_value = 0.0;
  double flux_value = 0.0;
  std::vector<double> v;  // all nodes, v(0) = v(1) = 0
  double lambda_min = 0.0;
};

FdLevel solve_level(const Weight& w, double alpha, int n) {
  const FdSystem s = assemble_dirichlet(w, n);
  FdLevel out;
  Tridiagonal k = s.stiffness;
  std::vector<double> rhs(s.mass.size());
  for (std::size_t i = 0; i < s.mass.size(); ++i) {
    k.diag[i] += alpha * s.mass[i];
    rhs[i] = -alpha * s.mass[i];
  }
  // the alpha-threshold test is done on the unshifted pencil so that the
  // shift tolerance is absolute in alpha
  if (count_negative_pivots(s.stiffness, s.mass, alpha - 1e-9) > 0) {
    out.definite = false;
    out.lambda_min = smallest_pencil_eigenvalue(s.stiffness, s.mass);
    return out;
  }
  if (count_negative_pivots(s.stiffness, s.mass, alpha - 1e-6) > 0) out.near_threshold = true;
  LdlResult sol = ldl_solve(k, rhs);
  out.v.assign(static_cast<std::size_t>(n) + 1, 0.0);
  std::copy(sol.solution.begin(), sol.solution.end(), out.v.begin() + 1);
  double acc = 0.0;
  for (std::size_t i = 1; i < static_cast<std::size_t>(n); ++i) acc += s.nodes[i] * out.v[i];
  out.quad_value = alpha + alpha * s.h * acc;
  const auto& v = out.v;
  const std::size_t N = static_cast<std::size_t>(n);
  const double d0 = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * s.h);
  const double d1 = (3.0 * v[N] - 4.0 * v[N - 1] + v[N - 2]) / (2.0 * s.h);
  out.flux_value = s.nodes[N] * d1 - s.nodes[0] * d0;
  return out;
}

// antiderivative K(y) of y^2/(y^2 + B)^3, or the series form near B = 0 where
// the closed branches cancel catastrophically
double inverse_cube_core(double B, double y) {
  if (std::abs(B) < 0.1) {
    // sum_k binom(-3,k) B^k int_1^y s^{-4-2k} ds
    double sum = 0.0;
    double bk = 1.0;
    for (int k = 0; k < 60; ++k) {
      const double coeff = ((k % 2) ? -1.0 : 1.0) * 0.5 * (k + 1) * (k + 2);
      const double p = 3.0 + 2.0 * k;
      const double term = coeff * bk * (1.0 - std::pow(y, -p)) / p;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum) && k > 3) break;
      bk *= B;
    }
    return sum;
  }
  auto K = [B](double t) {
    if (B > 0.0) {
      const double t2 = t * t;
      return t * (t2 - B) / (8.0 * B * (t2 + B) * (t2 + B)) + std::atan(t / std::sqrt(B)) / (8.0 * std::pow(B, 1.5));
    }
    const double c = std::sqrt(-B);
    const double t2 = t * t;
    return -t * (c * c + t2) / (8.0 * c * c * (t2 - c * c) * (t2 - c * c)) +
           (std::log(t + c) - std::log(t - c)) / (16.0 * c * c * c);
  };
  return K(y) - K(1.0);
}

}  // namespace

std::string to_string(MinMethod m) {
  switch (m) {
    case MinMethod::closed_form_beta1:
      return "closed-form-beta1";
    case MinMethod::closed_form_limit:
      return "closed-form-limit";
    case MinMethod::closed_form_alpha2:
      return "closed-form-alpha2";
    case MinMethod::finite_difference:
      return "finite-difference";
  }
  return "unknown";
}

MinResult closed_form_I_beta1(double alpha, int intervals) {
  MinResult r;
  r.problem = {alpha, 1.0};
  r.method = MinMethod::closed_form_beta1;
  if (alpha <= -0.25 - kPi * kPi) {
    r.value = Extended::minus_infinity();
    r.lambda_min = 0.25 + kPi * kPi;
    return r;
  }
  const std::complex<double> mu = complex_mu(alpha);
  double value;
  if (std::abs(mu) < 1e-4) {
    const double m2 = 0.25 + alpha;
    const double mu_coth = 1.0 + m2 / 3.0 - m2 * m2 / 45.0;
    const double mu_csch = 1.0 - m2 / 6.0 + 7.0 * m2 * m2 / 360.0;
    value = -0.5 + (kCoshHalf * mu_coth - mu_csch) / kSinhHalf;
  } else {
    value = (-0.5 + mu * (kCoshHalf * std::cosh(mu) - 1.0) / (kSinhHalf * std::sinh(mu))).real();
  }
  r.value = Extended::finite(value);
  const double sqrt_e = std::sqrt(kE);
  r.minimizer = sample_interval(intervals, [&](double x) {
    return (sqrt_e * sinh_ratio(mu, x) + sinh_ratio(mu, 1.0 - x)) / std::exp(0.5 * x);
  });
  return r;
}

MinResult closed_form_I_limit(double alpha, int intervals) {
  MinResult r;
  r.problem = {alpha, kBetaLimit};
  r.method = MinMethod::closed_form_limit;
  r.left_pinned = false;
  const double a0 = rodbreak::alpha0();
  if (alpha <= a0) {
    r.value = Extended::minus_infinity();
    r.lambda_min = -a0;
    return r;
  }
  const ComplexDegree deg = ComplexDegree::from_alpha(alpha);
  const double c1 = std::cosh(1.0);
  const LegendreValue at1 = legendre_series(deg, c1);
  r.value = Extended::finite((kE + 1.0) * (kE + 1.0) / (2.0 * kE) * at1.d1 / at1.value);
  r.minimizer = sample_interval(intervals, [&](double x) { return legendre_P(deg, std::cosh(x)) / at1.value; });
  return r;
}

double inverse_cube_weight_integral(double beta, double x) {
  if (!(beta >= 0.0 && beta < kBetaLimit)) throw DomainError("inverse_cube_weight_integral: beta outside [0, (e+1)/(e-1))");
  const double a = (1.0 + beta) / (2.0 * (kE - 1.0));
  const double B = kE * (1.0 - beta) / (1.0 + beta);
  return inverse_cube_core(B, std::exp(x)) / (a * a * a);
}

MinResult closed_form_I2(double beta, int intervals) {
  if (!(beta >= 0.0 && beta <= kBetaLimit * (1.0 + 1e-15)))
    throw DomainError("closed_form_I2: beta must lie in [0, (e+1)/(e-1)]");
  MinResult r;
  r.problem = {2.0, beta};
  r.method = MinMethod::closed_form_alpha2;
  if (is_limit_beta(beta)) {
    r.left_pinned = false;
    r.value = Extended::finite((kE + 1.0) * (kE + 1.0) / (kE * kE + 1.0));
    const double c1 = std::cosh(1.0);
    r.minimizer = sample_interval(intervals, [&](double x) { return std::cosh(x) / c1; });
    return r;
  }
  const Weight w(beta);
  const double F1 = inverse_cube_weight_integral(beta, 1.0);
  const double w0 = w(0.0), w1 = w(1.0), wx0 = w.derivative(0.0), wx1 = w.derivative(1.0);
  // v = -1 + omega'(lambda + 2 mu F) + mu/omega^2 with F(x) = int_0^x omega^-3
  const double a11 = wx0, a12 = 1.0 / (w0 * w0);
  const double a21 = wx1, a22 = 2.0 * wx1 * F1 + 1.0 / (w1 * w1);
  const double det = a11 * a22 - a12 * a21;
  const double lambda = (a22 - a12) / det;
  const double mu = (a11 - a21) / det;
  // v' = omega (lambda + 2 mu F)
  r.value = Extended::finite(w1 * w1 * (lambda + 2.0 * mu * F1) - w0 * w0 * lambda);
  r.minimizer = sample_interval(intervals, [&](double x) {
    const double wx = w(x);
    return w.derivative(x) * (lambda + 2.0 * mu * inverse_cube_weight_integral(beta, x)) + mu / (wx * wx);
  });
  return r;
}

MinResult solve_el_fd(const MinProblem& problem, int n) {
  if (!(std::abs(problem.beta) < kBetaLimit) || is_limit_beta(problem.beta))
    throw DomainError("solve_el_fd needs |beta| < (e+1)/(e-1)");
  if (n < 64) throw DomainError("solve_el_fd needs at least 64 intervals");
  const Weight w(problem.beta);
  MinResult r;
  r.problem = problem;
  r.method = MinMethod::finite_difference;
  if (problem.alpha == 0.0) {
    r.value = Extended::finite(0.0);
    r.minimizer = sample_interval(2 * n, [](double) { return 1.0; });
    return r;
  }
  const FdLevel coarse = solve_level(w, problem.alpha, n);
  const FdLevel fine = solve_level(w, problem.alpha, 2 * n);
  if (!coarse.definite || !fine.definite) {
    const double lam_c = coarse.definite ? smallest_pencil_eigenvalue(assemble_dirichlet(w, n).stiffness,
                                                                      assemble_dirichlet(w, n).mass)
                                         : coarse.lambda_min;
    const double lam_f = fine.definite ? smallest_pencil_eigenvalue(assemble_dirichlet(w, 2 * n).stiffness,
                                                                    assemble_dirichlet(w, 2 * n).mass)
                                       : fine.lambda_min;
    r.value = Extended::minus_infinity();
    r.lambda_min = (4.0 * lam_f - lam_c) / 3.0;
    if (problem.alpha > -*r.lambda_min + 1e-9)
      r.warnings.push_back("alpha is within discretisation error of the Poincare threshold; reported as -inf");
    return r;
  }
  if (coarse.near_threshold || fine.near_threshold)
    r.warnings.push_back("alpha within 1e-6 of the Poincare threshold; value is ill-conditioned");
  const double quad = (4.0 * fine.quad_value - coarse.quad_value) / 3.0;
  const double flux = (4.0 * fine.flux_value - coarse.flux_value) / 3.0;
  r.value = Extended::finite(quad);
  r.error_estimate = std::max(std::abs(fine.quad_value - coarse.quad_value) / 3.0, std::abs(flux - quad));
  r.minimizer.x.resize(fine.v.size());
  r.minimizer.values.resize(fine.v.size());
  for (std::size_t i = 0; i < fine.v.size(); ++i) {
    r.minimizer.x[i] = static_cast<double>(i) / (2.0 * n);
    r.minimizer.values[i] = 1.0 + fine.v[i];
  }
  return r;
}

int default_fd_grid() {
  if (const char* env = std::getenv("RODBREAK_GRID")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64 && v <= (1L << 22)) return static_cast<int>(v);
  }
  return 4096;
}

MinResult eval_I(const MinProblem& problem, std::optional<int> grid) {
  const double b = std::abs(problem.beta);
  MinResult r;
  if (b > kBetaLimit && !is_limit_beta(b)) {
    r.problem = problem;
    r.value = Extended::minus_infinity();
    r.warnings.push_back("|beta| > (e+1)/(e-1): the weight changes sign");
    return r;
  }
  if (is_limit_beta(b))
    r = closed_form_I_limit(problem.alpha);
  else if (b == 1.0)
    r = closed_form_I_beta1(problem.alpha);
  else if (problem.alpha == 2.0)
    r = closed_form_I2(b);
  else
    r = solve_el_fd({problem.alpha, b}, grid.value_or(default_fd_grid()));
  r.problem = problem;
  if (problem.beta < 0.0) {
    // I(alpha, -beta) = I(alpha, beta); the minimiser is reflected by x -> 1 - x
    r.minimizer = reflect(std::move(r.minimizer));
    std::swap(r.left_pinned, r.right_pinned);
  }
  return r;
}

double smallest_sturm_liouville_eigenvalue(const std::function<double(double)>& weight, int n, bool natural_left,
                                           bool natural_right) {
  if (n < 8) throw DomainError("eigenvalue grid too small");
  const double h = 1.0 / n;
  const double h2 = h * h;
  const int first = natural_left ? 0 : 1;
  const int last = natural_right ? n : n - 1;
  const std::size_t m = static_cast<std::size_t>(last - first + 1);
  Tridiagonal t;
  t.diag.assign(m, 0.0);
  t.off.assign(m - 1, 0.0);
  std::vector<double> mass(m);
  for (int i = first; i <= last; ++i) {
    const std::size_t j = static_cast<std::size_t>(i - first);
    const double left = i > 0 ? weight((i - 0.5) * h) : 0.0;
    const double right = i < n ? weight((i + 0.5) * h) : 0.0;
    t.diag[j] = (left + right) / h2;
    if (j + 1 < m) t.off[j] = -right / h2;
    if (i == 0)
      mass[j] = (weight(0.0) + 4.0 * weight(0.25 * h) + weight(0.5 * h)) / 12.0;  // (1/h) int_0^{h/2}
    else if (i == n)
      mass[j] = (weight(1.0) + 4.0 * weight(1.0 - 0.25 * h) + weight(1.0 - 0.5 * h)) / 12.0;
    else
      mass[j] = weight(i * h);
  }
  return smallest_pencil_eigenvalue(t, mass);
}

PoincareConstant poincare_best_constant(double beta) {
  const Weight w(beta);
  const bool limit = is_limit_beta(beta);
  const bool natural_left = limit && beta > 0.0;
  const bool natural_right = limit && beta < 0.0;
  auto weight = [&w](double x) { return std::max(w(x), 0.0); };
  const double coarse = smallest_sturm_liouville_eigenvalue(weight, 2048, natural_left, natural_right);
  const double fine = smallest_sturm_liouville_eigenvalue(weight, 4096, natural_left, natural_right);
  PoincareConstant pc;
  pc.beta = beta;
  pc.lambda_min = (4.0 * fine - coarse) / 3.0;
  pc.C = 1.0 / pc.lambda_min;
  if (limit) pc.limit_crosscheck = -1.0 / rodbreak::alpha0();
  return pc;
}

double el_residual(const MinProblem& problem, const IntervalSamples& u) {
  const Weight w(problem.beta);
  const std::size_t n = u.intervals();
  const double h = u.step();
  double worst = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double x = u.x[i];
    const double wl = w(x - 0.5 * h), wr = w(x + 0.5 * h);
    const double flux = (wr * (u.values[i + 1] - u.values[i]) - wl * (u.values[i] - u.values[i - 1])) / (h * h);
    worst = std::max(worst, std::abs(flux - problem.alpha * w(x) * u.values[i]));
  }
  return worst;
}

double convolution_estimate_check(const MinProblem& problem, const GridFunction& u, double I_value) {
  const std::size_t m = 4 * u.size();
  const GridFunction fine = spectral_resample(u, m);
  const GridFunction dfine = spectral_derivative(fine);
  std::vector<double> density(m);
  for (std::size_t j = 0; j < m; ++j) density[j] = problem.alpha * fine[j] * fine[j] + dfine[j] * dfine[j];
  const GridFunction f(std::move(density));
  const GridFunction cp = convolve_periodic(f, KernelChoice::p);
  const GridFunction cpp = convolve_periodic(f, KernelChoice::p_prime);
  double worst = INFINITY;
  for (std::size_t j = 0; j < m; ++j)
    worst = std::min(worst, cp[j] + problem.beta * cpp[j] - I_value * fine[j] * fine[j]);
  return worst;
}

double convolution_estimate_check(const MinProblem& problem, const GridFunction& u) {
  const MinResult r = eval_I(problem);
  if (!r.value.is_finite()) throw DomainError("convolution estimate check needs a finite I(alpha, beta)");
  return convolution_estimate_check(problem, u, r.value.value());
}

}  // namespace rodbreak
