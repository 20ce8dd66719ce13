#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rodbreak/beta_gamma.hpp"
#include "rodbreak/blowup.hpp"
#include "support.hpp"

using namespace rodbreak;
using rodbreak::testing::Rng;

namespace {

InitialDatum sine(double a, double c = 0.0, double shift = 0.0, double k = 1.0) {
  return InitialDatum::family(DatumDomain::circle, "sine", {{"a", a}, {"c", c}, {"shift", shift}, {"k", k}});
}

InitialDatum line(const std::string& name, InitialDatum::Params p = {}) {
  return InitialDatum::family(DatumDomain::line, name, p);
}

}  // namespace

TEST_CASE("sine at gamma = 1") {
  const BlowupVerdict v = check_blowup_periodic(sine(1.0), 1.0);
  CHECK(v.status == VerdictStatus::triggered);
  CHECK(v.triggered);
  REQUIRE(v.tstar_bound);
  CHECK(*v.tstar_bound == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
  CHECK(*v.tstar_x0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(*v.margin == doctest::Approx(-2.0 * M_PI).epsilon(1e-8));
  CHECK(*v.witness_x0 == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(v.beta_used.value() == doctest::Approx(compute_beta_gamma(1.0).beta_gamma.value()));
}

TEST_CASE("constant data never trigger") {
  for (double gamma : {1.0, 3.0, -2.0, 10.0}) {
    for (double c : {2.0, -0.7, 0.0}) {
      const BlowupVerdict v = check_blowup_periodic(sine(0.0, c), gamma);
      CHECK(v.status != VerdictStatus::triggered);
      CHECK_FALSE(v.tstar_bound);
    }
  }
}

TEST_CASE("gamma = 3 triggers on every nonconstant datum") {
  Rng rng(51);
  for (int i = 0; i < 20; ++i) {
    const double a = rng.uniform(0.01, 3.0), c = rng.uniform(-10.0, 10.0);
    const InitialDatum d = sine(a, c, rng.uniform(0.0, 1.0), rng.integer(1, 4));
    const BlowupVerdict v = check_blowup_periodic(d, 3.0);
    CHECK(v.triggered);
    REQUIRE(v.tstar_bound);
    // beta_3 = 0 so the bound is 2/(3 sup|u0'|)
    const double sup = 2.0 * M_PI * d.params().at("k") * a;
    CHECK(*v.tstar_bound == doctest::Approx(2.0 / (3.0 * sup)).epsilon(1e-9));
    REQUIRE(v.gamma3_display_bound);
    CHECK(*v.gamma3_display_bound == doctest::Approx(2.0 / 3.0 * std::sqrt(sup)).epsilon(1e-9));
  }
}

TEST_CASE("periodic criterion domain handling") {
  CHECK_THROWS_AS(check_blowup_periodic(sine(1.0), 0.0), DomainError);
  CHECK_THROWS_AS(check_blowup_periodic(line("gaussian"), 1.0), DomainError);
  const BlowupVerdict na = check_blowup_periodic(sine(1.0), -0.539);
  CHECK(na.status == VerdictStatus::not_applicable);
  CHECK_FALSE(na.triggered);
  CHECK(na.beta_used.is_plus_infinity());
  CHECK_FALSE(na.tstar_bound);
}

TEST_CASE("triggered iff the margin is negative and tstar present iff triggered") {
  Rng rng(52);
  for (int i = 0; i < 40; ++i) {
    double gamma = rng.uniform(-6.0, 6.0);
    if (std::abs(gamma) < 0.3) gamma = 1.5;
    const InitialDatum d = sine(rng.uniform(0.0, 2.0), rng.uniform(-5.0, 5.0), rng.uniform(0.0, 1.0));
    const BlowupVerdict v = check_blowup_periodic(d, gamma);
    if (v.status == VerdictStatus::not_applicable) continue;
    REQUIRE(v.margin);
    CHECK(v.triggered == (*v.margin < -kStrictnessTol));
    CHECK(v.tstar_bound.has_value() == v.triggered);
    // independent scan of the margin on a finer grid cannot beat the reported minimum by much
    const double beta = v.beta_used.value(), s = gamma > 0 ? 1.0 : -1.0;
    double scan = INFINITY;
    for (int j = 0; j < 20000; ++j) {
      const double x = j / 20000.0;
      scan = std::min(scan, s * d.derivative(x) + beta * std::abs(d.value(x)));
    }
    CHECK(*v.margin <= scan + 1e-9);
    // the scan overshoots the true minimum by at most Lipschitz(margin) * h / 2
    const double a = d.params().at("a"), w = 2.0 * M_PI;
    const double lip = a * w * w + beta * a * w;
    CHECK(*v.margin >= scan - lip * 0.5 / 20000.0 - 1e-9);
  }
}

TEST_CASE("scaling") {
  const BlowupVerdict base = check_blowup_periodic(sine(1.0), 1.0);
  for (double lambda : {0.1, 0.5, 3.0, 40.0}) {
    const BlowupVerdict v = check_blowup_periodic(sine(lambda), 1.0);
    CHECK(v.triggered == base.triggered);
    CHECK(*v.tstar_bound == doctest::Approx(*base.tstar_bound / lambda).epsilon(1e-9));
    CHECK(*v.margin == doctest::Approx(*base.margin * lambda).epsilon(1e-9));
  }
}

TEST_CASE("translation invariance") {
  Rng rng(53);
  for (double gamma : {1.0, -2.0, 2.5}) {
    const InitialDatum d0 = InitialDatum::family(DatumDomain::circle, "smoothed_peakon", {{"c", 1.3}, {"eps", 0.08}});
    const BlowupVerdict v0 = check_blowup_periodic(sine(1.0, 0.4), gamma);
    const BlowupVerdict p0 = check_blowup_periodic(d0, gamma);
    for (int i = 0; i < 6; ++i) {
      const double a = rng.uniform(0.0, 1.0);
      const BlowupVerdict v = check_blowup_periodic(sine(1.0, 0.4, a), gamma);
      CHECK(std::abs(*v.margin - *v0.margin) < 1e-8);
      REQUIRE(v.tstar_bound.has_value() == v0.tstar_bound.has_value());
      if (v.tstar_bound) CHECK(std::abs(*v.tstar_bound - *v0.tstar_bound) < 1e-8);
    }
    CHECK(p0.status != VerdictStatus::not_applicable);
  }
}

TEST_CASE("tmax at a zero of the datum") {
  for (double gamma : {1.0, 2.0, 3.0, -1.5, -4.0}) {
    for (double a : {0.5, 2.0}) {
      const BlowupVerdict v = check_blowup_periodic(sine(a), gamma);
      REQUIRE(v.triggered);
      // sup of u0'^2 - beta^2 u0^2 sits at a zero of sin where |u0'| = 2 pi a
      CHECK(*v.tstar_bound == doctest::Approx(2.0 / (std::abs(gamma) * 2.0 * M_PI * a)).epsilon(1e-10));
      CHECK(std::abs(std::sin(2 * M_PI * *v.tstar_x0)) < 1e-8);
    }
  }
}

TEST_CASE("line criterion") {
  const BlowupVerdict xg = check_blowup_line(line("xgauss"), 1.0);
  CHECK(xg.status == VerdictStatus::triggered);
  CHECK(xg.beta_used.value() == doctest::Approx(1.0));
  const BlowupVerdict pk = check_blowup_line(line("peakon"), 1.0);
  CHECK(pk.status != VerdictStatus::triggered);
  CHECK(std::abs(*pk.margin) < 1e-6);
  // gamma = 4, beta = 1/2: oracle scan of u0' + |u0|/2
  const InitialDatum sg = line("sine_gaussian");
  double scan = INFINITY;
  for (int j = -400000; j <= 400000; ++j) {
    const double x = j * 2.5e-5;
    scan = std::min(scan, sg.derivative(x) + 0.5 * std::abs(sg.value(x)));
  }
  const BlowupVerdict v4 = check_blowup_line(sg, 4.0);
  CHECK(v4.triggered == (scan < 0.0));
  CHECK(v4.triggered);
  CHECK(*v4.margin == doctest::Approx(scan).epsilon(1e-6));
  CHECK(check_blowup_line(line("gaussian"), 0.5).status == VerdictStatus::not_applicable);
  CHECK(check_blowup_line(line("gaussian"), 4.5).status == VerdictStatus::not_applicable);
  CHECK_THROWS_AS(check_blowup_line(sine(1.0), 1.0), DomainError);
}

TEST_CASE("comparison harness examples") {
  for (double h : {0.5, 1.0, 3.0}) {
    const double c = 1.7;
    const ComparisonOutcome eq =
        comparison_lemma_harness(h, h, c, [&](double, double f, double g) { return std::pair{c * f * g, c * f * g}; });
    CHECK(eq.diverged);
    CHECK(eq.bound == doctest::Approx(1.0 / (c * h)));
    CHECK(eq.blowup_time == doctest::Approx(eq.bound).epsilon(1e-6));
    CHECK(eq.blowup_time <= eq.bound);
    CHECK(eq.dominance_held);
    const ComparisonOutcome up = comparison_lemma_harness(
        h, h, c, [&](double, double f, double g) { return std::pair{c * f * g + 1.0, c * f * g + 1.0}; });
    CHECK(up.diverged);
    CHECK(up.blowup_time < up.bound);
  }
  const ComparisonOutcome fg =
      comparison_lemma_harness(4.0, 1.0, 1.0, [](double, double f, double g) { return std::pair{f * g, f * g}; });
  CHECK(fg.bound == doctest::Approx(0.5));
  CHECK(fg.diverged);
  CHECK(fg.blowup_time <= 0.5);
  auto id = [](double, double f, double g) { return std::pair{f * g, f * g}; };
  CHECK_THROWS_AS(comparison_lemma_harness(0.0, 1.0, 1.0, id), DomainError);
  CHECK_THROWS_AS(comparison_lemma_harness(1.0, -1.0, 1.0, id), DomainError);
  CHECK_THROWS_AS(comparison_lemma_harness(1.0, 1.0, 0.0, id), DomainError);
}

TEST_CASE("comparison harness never diverges after the bound") {
  Rng rng(54);
  for (int trial = 0; trial < 50; ++trial) {
    const double f0 = rng.uniform(0.1, 5.0), g0 = rng.uniform(0.1, 5.0), c = rng.uniform(0.2, 3.0);
    const double a1 = rng.uniform(0.0, 2.0), a2 = rng.uniform(0.0, 2.0), a3 = rng.uniform(0.0, 1.0);
    const double w = rng.uniform(1.0, 10.0);
    auto rhs = [=](double t, double f, double g) {
      const double base = c * f * g;
      return std::pair{base + a1 * f * f + a3 * (1.0 + std::sin(w * t)), base + a2 * g + a3 * g * g};
    };
    const ComparisonOutcome o = comparison_lemma_harness(f0, g0, c, rhs);
    CHECK(o.dominance_held);
    CHECK(o.diverged);
    CHECK_MESSAGE(o.blowup_time <= o.bound * (1.0 + 1e-9), "trial " << trial);
  }
}

TEST_CASE("unique continuation") {
  const std::size_t n = 256;
  const GridFunction c = GridFunction::sample(n, [](double) { return 1.5; });
  const ContinuityReport rc = unique_continuation_check({c}, 1.0);
  CHECK(rc.total_violations == 0);
  CHECK_FALSE(rc.contradiction);
  CHECK(rc.frames[0].intervals.size() == 1);
  CHECK(rc.frames[0].intervals[0].length == n);

  const GridFunction s = GridFunction::sample(n, [](double x) { return std::sin(2 * M_PI * x); });
  const ContinuityReport rs = unique_continuation_check({c, s}, 1.0);
  CHECK(rs.frames[1].violations > 0);
  CHECK(rs.frames[1].vanishes_somewhere);
  CHECK(rs.contradiction);
  CHECK_FALSE(rs.notes.empty());
  bool decreasing_past_max = false;
  for (const auto& iv : rs.frames[1].intervals)
    if (iv.sign > 0 && !iv.monotone) decreasing_past_max = *iv.violation_x > 0.25 && *iv.violation_x < 0.5;
  CHECK(decreasing_past_max);

  // touches zero at x = 1/2 only, still a contradiction candidate
  const GridFunction t = GridFunction::sample(n, [](double x) { return 1.0 + std::cos(2 * M_PI * x); });
  const ContinuityReport rt = unique_continuation_check({t}, 1.0);
  CHECK(rt.frames[0].vanishes_somewhere);
  CHECK(rt.contradiction);

  const GridFunction z = GridFunction::sample(n, [](double) { return 0.0; });
  const ContinuityReport rz = unique_continuation_check({z}, 2.0);
  CHECK(rz.frames[0].identically_zero);
  CHECK_FALSE(rz.contradiction);

  const ContinuityReport na = unique_continuation_check({s}, -0.539);
  CHECK(na.frames.empty());
  CHECK_FALSE(na.contradiction);
  CHECK_THROWS_AS(unique_continuation_check({s}, 0.0, 0.5), DomainError);
}

TEST_CASE("decay test on the line") {
  CHECK(decay_blowup_test_line(line("gaussian"), 1.0));
  CHECK_FALSE(decay_blowup_test_line(line("peakon"), 1.0));
  CHECK(decay_blowup_test_line(line("bump"), 2.0));
  CHECK(decay_blowup_test_line(line("xgauss"), 4.0));
  CHECK_FALSE(decay_blowup_test_line(line("gaussian"), 0.5));
  CHECK_THROWS_AS(decay_blowup_test_line(sine(1.0), 1.0), DomainError);
}
