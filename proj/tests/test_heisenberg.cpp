#include <doctest.h>

#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <sstream>

#include "mcplab/errors.hpp"
#include "mcplab/heisenberg.hpp"

using namespace mcplab;
using namespace mcplab::heisenberg;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Closed-form Heisenberg geodesic from the origin: the horizontal velocity
// rotates by J with angular speed omega = eps u0, so each (x_i, y_i) traces a
// circle and z collects the swept area.
GeodesicState exact_geodesic(const HeisenbergModel& m, const Vec& u, double t) {
  const int n = m.n;
  const double w = m.eps * u(0);
  GeodesicState s{Vec::Zero(2 * n + 1), Vec::Zero(2 * n + 1)};
  double area = 0.0;
  for (int i = 0; i < n; ++i) {
    const std::complex<double> h0(u(1 + i), u(1 + n + i));
    const std::complex<double> rot = std::exp(std::complex<double>(0, w * t));
    const std::complex<double> pos =
        std::abs(w) < 1e-14 ? h0 * t : h0 * (rot - 1.0) / std::complex<double>(0, w);
    s.pos(i) = pos.real();
    s.pos(n + i) = pos.imag();
    s.vel(1 + i) = (h0 * rot).real();
    s.vel(1 + n + i) = (h0 * rot).imag();
    area += std::norm(h0);
  }
  s.vel(0) = u(0);
  const double swept = std::abs(w) < 1e-8 ? w * t * t * t / 6 : (t - std::sin(w * t) / w) / w;
  s.pos(2 * n) = u(0) * t / m.eps + 0.5 * area * swept;
  return s;
}

Vec random_velocity(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> g;
  Vec u(d);
  for (int i = 0; i < d; ++i) u(i) = g(rng);
  return u;
}

}  // namespace

TEST_CASE("frame matrix rows") {
  const HeisenbergModel m{1, 1.0};
  const Mat F0 = frame_matrix(m, Vec::Zero(3));
  Mat expected(3, 3);
  expected << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  CHECK(F0 == expected);
  const Mat F1 = frame_matrix(m, vec({2, 0, 0}));
  CHECK(F1.row(2) == vec({0, 1, 1}).transpose());
  const Mat F2 = frame_matrix({1, 2.0}, vec({0.3, -1.2, 5}));
  CHECK(F2.row(0) == vec({0, 0, 0.5}).transpose());
  CHECK(std::abs(frame_matrix({3, 0.7}, Vec::LinSpaced(7, -3, 3)).determinant()) > 0);
}

TEST_CASE("vertical and horizontal straight lines") {
  for (double eps : {0.5, 2.0}) {
    const HeisenbergModel m{1, eps};
    const auto up = geodesic_flow(m, {Vec::Zero(3), vec({1, 0, 0})}, 3.0);
    const auto s = up.at(3.0);
    CHECK(s.pos.head(2).norm() < 1e-12);
    CHECK(s.pos(2) == doctest::Approx(3.0 / eps).epsilon(1e-10));
  }
  const auto side = geodesic_flow({1, 1.0}, {Vec::Zero(3), vec({0, 1, 0})}, 2.0);
  for (double t : {0.5, 1.0, 2.0}) {
    const auto s = side.at(t);
    CHECK(s.pos(0) == doctest::Approx(t).epsilon(1e-10));
    CHECK(std::abs(s.pos(1)) < 1e-12);
    CHECK(std::abs(s.pos(2)) < 1e-12);
  }
}

TEST_CASE("geodesics agree with the circular closed form") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const HeisenbergModel m{1 + trial % 3, 0.5 + 0.25 * (trial % 5)};
    const Vec u = random_velocity(rng, m.dim());
    const auto traj = geodesic_flow(m, {Vec::Zero(m.dim()), u}, 4.0);
    double worst = 0.0;
    for (double t : traj.sample_times(41)) {
      const auto num = traj.at(t);
      const auto ref = exact_geodesic(m, u, t);
      worst = std::max({worst, (num.pos - ref.pos).cwiseAbs().maxCoeff(),
                        (num.vel - ref.vel).cwiseAbs().maxCoeff()});
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("speed and vertical velocity are conserved") {
  std::mt19937_64 rng(2024);
  const double tol = 1e-10;
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const HeisenbergModel m{1 + trial % 3, 0.5 + trial % 4};
    std::uniform_real_distribution<double> pos(-2, 2);
    Vec p(m.dim());
    for (int i = 0; i < p.size(); ++i) p(i) = pos(rng);
    const Vec u = random_velocity(rng, m.dim()).normalized();
    const auto traj = geodesic_flow(m, {p, u}, 5.0, tol);
    for (double t : traj.sample_times(201)) {
      const auto s = traj.at(t);
      worst = std::max({worst, std::abs(s.vel.norm() - 1.0), std::abs(s.vel(0) - u(0))});
    }
  }
  CHECK(worst <= 10 * tol);
}

TEST_CASE("flowing forward then backward returns to the start") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const HeisenbergModel m{2, 1.5};
    const GeodesicState start{random_velocity(rng, 5), random_velocity(rng, 5).normalized()};
    const auto fwd = geodesic_flow(m, start, 3.0);
    const auto back = geodesic_flow(m, fwd.at(3.0), -3.0);
    const auto end = back.at(-3.0);
    CHECK((end.pos - start.pos).cwiseAbs().maxCoeff() <= 100 * 1e-10 * 10);
    CHECK((end.vel - start.vel).cwiseAbs().maxCoeff() <= 100 * 1e-10);
  }
}

TEST_CASE("adapted frame and W") {
  SUBCASE("unit horizontal start, eps = 2") {
    const HeisenbergModel m{1, 2.0};
    const auto traj = geodesic_flow(m, {Vec::Zero(3), vec({0, 1, 0})}, 2.0);
    const auto af = adapted_frame(m, traj);
    CHECK(af.b == doctest::Approx(-1.0));
    CHECK(af.c == doctest::Approx(0.0));
    Mat W1(3, 3);
    W1 << 0, 0, -1, 0, 0, 0, 1, 0, 0;
    CHECK((af.W - W1).norm() < 1e-15);
  }
  SUBCASE("vertical component gives c") {
    const HeisenbergModel m{1, 2.0};
    const auto traj = geodesic_flow(m, {Vec::Zero(3), vec({1.0, 1, 0})}, 2.0);  // <u,V> = 2
    const auto af = adapted_frame(m, traj);
    CHECK(af.c == doctest::Approx(1.0));
    CHECK(af.b == doctest::Approx(-1.0));
  }
  SUBCASE("frame derivative matches W along random geodesics") {
    std::mt19937_64 rng(8);
    for (int n : {1, 2, 3}) {
      const HeisenbergModel m{n, 1.3};
      const Vec u = random_velocity(rng, m.dim());
      const auto traj = geodesic_flow(m, {Vec::Zero(m.dim()), u}, 2.0, 1e-10);
      const auto af = adapted_frame(m, traj, 2001);
      CHECK(af.residual <= 1e-7);
      CHECK(af.orthonormality <= 1e-8);
      // Central finite differences of the sampled frames as an independent oracle.
      const auto geom = geometry::build_heisenberg_algebra(n, m.eps);
      const auto lc = geometry::levi_civita(geom.algebra);
      double worst = 0.0;
      for (std::size_t i = 1; i + 1 < af.t.size(); i += 50) {
        const double h = af.t[i + 1] - af.t[i];
        const Vec uu = traj.at(af.t[i]).vel;
        const Mat dv = (af.frames[i + 1] - af.frames[i - 1]) / (2 * h);
        for (int k = 0; k < m.dim(); ++k) {
          const Vec vk = af.frames[i].row(k).transpose();
          const Vec cov = dv.row(k).transpose() + geometry::covariant(lc, uu, vk);
          const Vec rhs = (af.W.row(k) * af.frames[i]).transpose();
          worst = std::max(worst, (cov - rhs).cwiseAbs().maxCoeff());
        }
      }
      CHECK(worst < 1e-5);
    }
  }
  SUBCASE("purely vertical geodesic has no adapted frame") {
    const HeisenbergModel m{1, 1.0};
    const auto traj = geodesic_flow(m, {Vec::Zero(3), vec({1, 0, 0})}, 1.0);
    CHECK_THROWS_AS(adapted_frame(m, traj), DegenerateDirectionError);
    CHECK_THROWS_AS(jacobi_determinant(m, {Vec::Zero(3), vec({1, 0, 0})}, 0.5), DegenerateDirectionError);
  }
}

TEST_CASE("Jacobi determinant") {
  SUBCASE("Euclidean case is t^(2n+1)") {
    for (int n : {1, 2, 3})
      for (double t : {0.3, 1.0, 2.0})
        CHECK(jacobi_determinant({0, 0, n}, t) == doctest::Approx(std::pow(t, 2 * n + 1)).epsilon(1e-10));
  }
  SUBCASE("conjugate point at t = 1 when c = pi") {
    CHECK(std::abs(jacobi_determinant({0, std::numbers::pi, 1}, 1.0)) < 1e-6);
  }
  SUBCASE("agrees with exp of the integrated closed-form trace") {
    using boost::math::quadrature::gauss;
    for (const riccati::Params p : {riccati::Params{1, 1, 1}, riccati::Params{2.5, -0.7, 2},
                                    riccati::Params{0.3, 2.8, 3}}) {
      for (double t : {0.2, 0.5, 0.8}) {
        const int d = 2 * p.n + 1;
        // d/ds ln det A(s) = -tr F(s) with F from the closed forms at s.
        auto integrand = [&](double s) {
          const auto cf = riccati::closed_forms(p, s);
          return -(cf.F1.trace() + (2 * p.n - 2) * cf.F3_scalar) - d / s;
        };
        const double log_det = d * std::log(t) + gauss<double, 60>::integrate(integrand, 0.0, t);
        const double ode = jacobi_determinant(p, t);
        CHECK(ode == doctest::Approx(std::exp(log_det)).epsilon(1e-6));
      }
    }
  }
  SUBCASE("velocity overload reads b and c off the start") {
    const HeisenbergModel m{1, 2.0};
    const GeodesicState s{Vec::Zero(3), vec({0.5, 0.6, 0.8})};
    const auto p = params_from_velocity(m, s.vel);
    CHECK(p.b == doctest::Approx(-1.0));
    CHECK(p.c == doctest::Approx(0.5));
    CHECK(jacobi_determinant(m, s, 0.7) == doctest::Approx(jacobi_determinant(p, 0.7)));
  }
}

TEST_CASE("trajectory CSV is deterministic") {
  const HeisenbergModel m{2, 1.0};
  const GeodesicState s{Vec::Zero(5), vec({0.2, 1, 0, 0.5, -0.3})};
  std::ostringstream a, b;
  geodesic_flow(m, s, 1.0).write_csv(a, 11);
  geodesic_flow(m, s, 1.0).write_csv(b, 11);
  CHECK(a.str() == b.str());
  std::istringstream in(a.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,x1,x2,y1,y2,z,u0,u1,u2,u3,u4");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  CHECK(rows == 11);
}

TEST_CASE("invalid inputs") {
  CHECK_THROWS_AS(frame_matrix({0, 1.0}, Vec::Zero(1)), DomainError);
  CHECK_THROWS_AS(frame_matrix({1, 1.0}, Vec::Zero(5)), DomainError);
  CHECK_THROWS_AS(geodesic_flow({1, 1.0}, {Vec::Zero(3), Vec::Zero(2)}, 1.0), DomainError);
  CHECK_THROWS_AS(geodesic_flow({1, 1.0}, {Vec::Zero(3), Vec::Ones(3)}, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(geodesic_flow({1, -1.0}, {Vec::Zero(3), Vec::Ones(3)}, 1.0), DomainError);
}
