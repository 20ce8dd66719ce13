#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rodbreak/beta_gamma.hpp"
#include "rodbreak/blowup.hpp"
#include "rodbreak/kernel.hpp"
#include "rodbreak/simulator.hpp"
#include "support.hpp"

using namespace rodbreak;

namespace {

InitialDatum sine(double a, double c = 0.0, double k = 1.0) {
  return InitialDatum::family(DatumDomain::circle, "sine", {{"a", a}, {"c", c}, {"k", k}});
}

SimConfig config(double gamma, double t_max, std::size_t modes = 512) {
  SimConfig c;
  c.gamma = gamma;
  c.t_max = t_max;
  c.modes = modes;
  return c;
}

}  // namespace

TEST_CASE("configuration") {
  SimConfig c = config(1.0, 1.0);
  CHECK_NOTHROW(c.validate());
  c.modes = 100;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.modes = 64;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = config(1.0, 1.0);
  c.cfl_safety = 1.5;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = config(1.0, 1.0);
  c.dt0 = 0.0;
  CHECK_THROWS_AS(RodSimulator(c, sine(1.0)), DomainError);
}

TEST_CASE("constants are exact solutions") {
  for (double gamma : {1.0, 3.0, -2.0}) {
    RodSimulator sim(config(gamma, 1.0, 256), sine(0.0, 1.3));
    const RunOutput out = sim.run();
    CHECK(out.reason == StopReason::t_max);
    CHECK(out.final_state.t == doctest::Approx(1.0));
    CHECK(std::abs(out.final_state.u_hat[0] - std::complex<double>(1.3, 0.0)) < 1e-13);
    for (std::size_t k = 1; k < out.final_state.u_hat.size(); ++k) CHECK(std::abs(out.final_state.u_hat[k]) < 1e-13);
    CHECK_FALSE(detect_and_fit_blowup(out, gamma).detected);
  }
}

TEST_CASE("reality and energy of the initial state") {
  RodSimulator sim(config(1.0, 0.0), sine(0.5, 0.2));
  const SimState& s = sim.state();
  CHECK(s.u_hat[0].imag() == 0.0);
  CHECK(s.u_hat.size() == 257);
  // int (a sin + c)^2 + (2 pi a cos)^2 = c^2 + a^2/2 + 2 pi^2 a^2
  CHECK(s.energy == doctest::Approx(0.04 + 0.125 + 2 * M_PI * M_PI * 0.25).epsilon(1e-13));
  CHECK(spectral_energy(s.u_hat, 512) == doctest::Approx(s.energy).epsilon(1e-15));
  CHECK(s.min_slope == doctest::Approx(-M_PI).epsilon(1e-12));
  const GridFunction u = sim.physical();
  for (std::size_t j = 0; j < u.size(); j += 31) CHECK(u[j] == doctest::Approx(0.5 * std::sin(2 * M_PI * u.x(j)) + 0.2).epsilon(1e-13));
}

TEST_CASE("BBM case is global") {
  RodSimulator sim(config(0.0, 10.0), sine(1.0));
  const RunOutput out = sim.run();
  CHECK(out.reason == StopReason::t_max);
  CHECK(out.final_state.t == doctest::Approx(10.0));
  CHECK(out.energy_drift_smooth < 1e-6);
  CHECK(std::abs(out.final_state.energy - out.initial.energy) / out.initial.energy < 1e-6);
  CHECK_FALSE(detect_and_fit_blowup(out, 0.0).detected);
}

TEST_CASE("spectral convergence before breaking") {
  const InitialDatum d = sine(0.5, 0.1);
  const double dt = 1e-4;
  RodSimulator coarse(config(1.0, 0.1, 512), d), fine(config(1.0, 0.1, 1024), d);
  for (int i = 0; i < 1000; ++i) {
    coarse.step(dt);
    fine.step(dt);
  }
  const GridFunction uc = coarse.physical(), uf = fine.physical();
  double diff = 0.0;
  for (std::size_t j = 0; j < uc.size(); ++j) diff = std::max(diff, std::abs(uc[j] - uf[2 * j]));
  CHECK(diff < 1e-8);
}

TEST_CASE("rhs of a single mode at gamma = 0") {
  // u = sin 2 pi x: u_t = -d/dx p * (3/2 u^2) with u^2 = (1 - cos 4 pi x)/2
  RodSimulator sim(config(0.0, 0.0, 128), sine(1.0));
  const Spectrum r = sim.rhs(sim.state().u_hat);
  // -(3/4) d/dx p * (-cos 4 pi x) = -(3/4) 4 pi sin(4 pi x) / (1 + 16 pi^2)
  const double amp = -0.75 * 4 * M_PI / (1 + 16 * M_PI * M_PI);
  // sin(4 pi x) has c_2 = -i/2
  CHECK(std::abs(r[2] - std::complex<double>(0.0, -amp / 2)) < 1e-14);
  CHECK(std::abs(r[0]) < 1e-15);
  CHECK(std::abs(r[1]) < 1e-14);
}

TEST_CASE("energy conservation and bounded sup norm") {
  for (double gamma : {1.0, 2.0, 3.0, -1.5}) {
    const InitialDatum d = sine(0.5, 0.2);
    RodSimulator sim(config(gamma, 10.0), d);
    const RunOutput out = sim.run();
    CHECK(out.reason != StopReason::t_max);
    CHECK(out.reason != StopReason::non_finite);
    CHECK(out.energy_drift_smooth < 1e-6);
    // sup |u|^2 <= p(0) E(u) on the circle
    const double cap = std::sqrt(eval_p(0.0) * out.initial.energy) * (1 + 1e-6);
    for (const auto& row : out.series) CHECK(row.max_abs_u <= cap);
    // 512 modes resolve roughly a fivefold steepening
    CHECK(out.final_state.min_slope < 3.0 * out.initial.min_slope);
  }
}

TEST_CASE("flow map") {
  SimConfig c = config(2.0, 0.5, 128);
  c.track = {0.0, 0.25, 0.9};
  RodSimulator sim(c, sine(0.0, 0.3));
  const RunOutput out = sim.run();
  REQUIRE(out.trajectories.size() == 3);
  for (const Trajectory& tr : out.trajectories) {
    CHECK(tr.q.front() == tr.x0);
    CHECK(tr.t.front() == 0.0);
    for (std::size_t i = 0; i < tr.t.size(); ++i) CHECK(tr.q[i] == doctest::Approx(tr.x0 + 0.6 * tr.t[i]).epsilon(1e-12));
  }
  const Trajectory again = integrate_flow_map(out.history, 128, 2.0, 0.4);
  CHECK(again.q.front() == 0.4);
  CHECK(again.q.back() == doctest::Approx(0.4 + 0.6 * 0.5).epsilon(1e-12));

  // odd about 1/2: u(t, 1/2) = 0 is preserved, so q(t, 1/2) = 1/2
  SimConfig s = config(1.0, 0.4);
  s.track = {0.5, 0.3};
  const RunOutput odd = RodSimulator(s, sine(0.5)).run();
  for (double q : odd.trajectories[0].q) CHECK(std::abs(q - 0.5) < 1e-10);
  // the characteristic from 0.3 moves right toward the steepening front
  CHECK(odd.trajectories[1].q.back() > 0.3);
  CHECK(odd.trajectories[1].q.back() < 0.5);
}

TEST_CASE("f and g along characteristics") {
  SimConfig c = config(1.0, 0.2, 128);
  c.track = {0.1};
  const RunOutput flat = RodSimulator(c, sine(0.0, 0.8)).run();
  const double beta = 0.514;
  for (const FgSample& s : monitor_fg(flat.history, 128, flat.trajectories[0], beta)) {
    CHECK(s.f == doctest::Approx(beta * 0.8).epsilon(1e-12));
    CHECK(s.g == doctest::Approx(-beta * 0.8).epsilon(1e-12));
  }

  SimConfig t = config(1.0, 10.0);
  t.track = {0.5};
  const RunOutput run = RodSimulator(t, sine(0.5)).run();
  const std::vector<FgSample> fg = monitor_fg(run.history, 512, run.trajectories[0], beta);
  REQUIRE(fg.size() > 10);
  CHECK(fg.front().f == doctest::Approx(M_PI).epsilon(1e-10));
  CHECK(fg.front().g == doctest::Approx(M_PI).epsilon(1e-10));
  for (std::size_t i = 1; i < fg.size(); ++i) {
    CHECK(fg[i].f > 0.0);
    CHECK(fg[i].g > 0.0);
    CHECK(fg[i].f * fg[i].g >= fg[i - 1].f * fg[i - 1].g * (1 - 1e-9));
  }
}

TEST_CASE("breakdown never outlasts the lifespan bound") {
  struct Case {
    double gamma, a, c, k;
  };
  const Case cases[] = {{1.0, 0.5, 0.0, 1}, {2.0, 0.5, 0.0, 1}, {3.0, 0.1, 0.0, 1}, {1.0, 1.0, 0.2, 1},
                        {2.0, 0.3, -0.1, 1}, {3.0, 0.5, 0.3, 1}, {1.5, 0.4, 0.0, 2}, {2.5, 0.2, 0.05, 1},
                        {-1.5, 0.5, 0.0, 1}, {-3.0, 0.3, 0.1, 1}};
  for (const Case& cs : cases) {
    const InitialDatum d = sine(cs.a, cs.c, cs.k);
    const BlowupVerdict v = check_blowup_periodic(d, cs.gamma);
    REQUIRE(v.triggered);
    const RunOutput run = RodSimulator(config(cs.gamma, 10.0), d).run();
    const BlowupFit fit = detect_and_fit_blowup(run, cs.gamma);
    REQUIRE_MESSAGE(fit.detected, "gamma = " << cs.gamma << ", a = " << cs.a);
    CHECK_MESSAGE(run.final_state.t <= *v.tstar_bound, "gamma = " << cs.gamma);
    CHECK_MESSAGE(fit.t_star_est <= *v.tstar_bound, "gamma = " << cs.gamma << ", a = " << cs.a << ", c = " << cs.c);
    CHECK(fit.t_star_est > run.final_state.t);
  }
}

TEST_CASE("blowup rate") {
  for (double gamma : {1.0, 2.0, 3.0}) {
    const RunOutput run = RodSimulator(config(gamma, 10.0), sine(0.5)).run();
    const BlowupFit fit = detect_and_fit_blowup(run, gamma);
    REQUIRE(fit.detected);
    CHECK_FALSE(fit.inconclusive);
    CHECK(fit.window_samples >= 200);
    CHECK(std::abs(fit.rate_coeff - 2.0 / gamma) / (2.0 / gamma) < 0.1);
  }
}

TEST_CASE("history csv") {
  SimConfig c = config(1.0, 0.05, 128);
  c.track = {0.2, 0.7};
  const RunOutput run = RodSimulator(c, sine(0.5)).run();
  std::ostringstream os;
  write_history_csv(os, run);
  std::istringstream is(os.str());
  std::string header, line;
  std::getline(is, header);
  CHECK(header.find("t,energy,min_gamma_ux,max_abs_u") == 0);
  std::size_t rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == run.history.size());
}
