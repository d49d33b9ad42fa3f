#include <doctest.h>

#include <cmath>

#include "mcplab/errors.hpp"
#include "mcplab/ode.hpp"

using mcplab::ode::State;

TEST_CASE("exponential decay reaches analytic value") {
  auto f = [](double, const State& y, State& dy) { dy = -2.0 * y; };
  State y0(1);
  y0 << 3.0;
  const State y = mcplab::ode::solve(f, 0.0, y0, 1.5);
  CHECK(y(0) == doctest::Approx(3.0 * std::exp(-3.0)).epsilon(1e-9));
}

TEST_CASE("harmonic oscillator with dense output") {
  auto f = [](double, const State& y, State& dy) {
    dy(0) = y(1);
    dy(1) = -y(0);
  };
  State y0(2);
  y0 << 0.0, 1.0;
  const auto sol = mcplab::ode::integrate(f, 0.0, y0, 20.0);
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    const double t = 20.0 * i / 400;
    const State y = sol(t);
    worst = std::max({worst, std::abs(y(0) - std::sin(t)), std::abs(y(1) - std::cos(t))});
  }
  CHECK(worst < 1e-8);
  CHECK(sol.steps() > 10);
}

TEST_CASE("backward integration retraces forward") {
  auto f = [](double t, const State& y, State& dy) { dy(0) = std::cos(t) * y(0); };
  State y0(1);
  y0 << 1.0;
  const State y1 = mcplab::ode::solve(f, 0.0, y0, 4.0);
  CHECK(y1(0) == doctest::Approx(std::exp(std::sin(4.0))).epsilon(1e-9));
  const State back = mcplab::ode::solve(f, 4.0, y1, 0.0);
  CHECK(back(0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("blow-up raises IntegrationError with last good time") {
  auto f = [](double, const State& y, State& dy) { dy(0) = y(0) * y(0); };
  State y0(1);
  y0 << 1.0;  // y = 1/(1-t)
  try {
    mcplab::ode::solve(f, 0.0, y0, 2.0);
    FAIL("expected IntegrationError");
  } catch (const mcplab::IntegrationError& e) {
    CHECK(e.last_good_time() > 0.9);
    CHECK(e.last_good_time() <= 1.0);
  }
}

TEST_CASE("zero-length interval returns initial state") {
  auto f = [](double, const State& y, State& dy) { dy = y; };
  State y0(2);
  y0 << 1.0, 2.0;
  const State y = mcplab::ode::solve(f, 1.0, y0, 1.0);
  CHECK(y(0) == 1.0);
  CHECK(y(1) == 2.0);
}
