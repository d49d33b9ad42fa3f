#include "mcplab/heisenberg.hpp"

#include <cmath>
#include <ostream>

#include "mcplab/errors.hpp"
#include "mcplab/identities.hpp"

namespace mcplab::heisenberg {
namespace {

struct Geometry {
  geometry::ContactModel model;
  geometry::ConnectionCoeffs lc;
};

Geometry make_geometry(const HeisenbergModel& m) {
  Geometry g;
  g.model = geometry::build_heisenberg_algebra(m.n, m.eps);
  g.lc = geometry::levi_civita(g.model.algebra);
  return g;
}

void require_state(const HeisenbergModel& model, const GeodesicState& s) {
  if (s.pos.size() != model.dim() || s.vel.size() != model.dim())
    throw DomainError("geodesic state must have 2n+1 position and velocity components");
  if (!s.pos.allFinite() || !s.vel.allFinite()) throw DomainError("geodesic state must be finite");
}

}  // namespace

void require_valid(const HeisenbergModel& model) {
  if (model.n < 1) throw DomainError("heisenberg: n must be >= 1");
  if (!(model.eps > 0.0) || !std::isfinite(model.eps))
    throw DomainError("heisenberg: eps must be positive");
}

Mat frame_matrix(const HeisenbergModel& model, const Vec& pos) {
  require_valid(model);
  const int n = model.n, d = model.dim();
  if (pos.size() != d) throw DomainError("frame_matrix: position must have 2n+1 components");
  Mat F = Mat::Zero(d, d);
  F(0, 2 * n) = 1.0 / model.eps;
  for (int i = 0; i < n; ++i) {
    const double x = pos(i), y = pos(n + i);
    F(1 + i, i) = 1.0;
    F(1 + i, 2 * n) = -0.5 * y;
    F(1 + n + i, n + i) = 1.0;
    F(1 + n + i, 2 * n) = 0.5 * x;
  }
  return F;
}

Trajectory::Trajectory(HeisenbergModel model, ode::DenseSolution dense, double tol)
    : model_(model), dense_(std::move(dense)), tol_(tol) {}

GeodesicState Trajectory::at(double t) const {
  const int d = model_.dim();
  const Vec y = dense_(t);
  return {y.head(d), y.tail(d)};
}

std::vector<double> Trajectory::sample_times(int count) const {
  if (count < 2) throw DomainError("trajectory sampling needs at least 2 points");
  std::vector<double> ts(count);
  const double a = t_begin(), b = t_end();
  for (int i = 0; i < count; ++i) ts[i] = a + (b - a) * i / (count - 1);
  ts.back() = b;
  return ts;
}

void Trajectory::write_csv(std::ostream& os, int count) const {
  const int n = model_.n;
  os << "t";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",y" << i;
  os << ",z";
  for (int k = 0; k <= 2 * n; ++k) os << ",u" << k;
  os << '\n';
  const auto old_precision = os.precision(17);
  for (double t : sample_times(count)) {
    const GeodesicState s = at(t);
    os << t;
    for (int k = 0; k < s.pos.size(); ++k) os << ',' << s.pos(k);
    for (int k = 0; k < s.vel.size(); ++k) os << ',' << s.vel(k);
    os << '\n';
  }
  os.precision(old_precision);
}

Trajectory geodesic_flow(const HeisenbergModel& model, const GeodesicState& start, double T,
                         double tol) {
  require_valid(model);
  require_state(model, start);
  if (!(tol > 0.0)) throw DomainError("geodesic_flow: tol must be positive");
  if (!std::isfinite(T)) throw DomainError("geodesic_flow: T must be finite");
  const Geometry g = make_geometry(model);
  const int d = model.dim();

  ode::Rhs rhs = [&](double, const ode::State& y, ode::State& dy) {
    const Vec u = y.tail(d);
    dy.tail(d) = -geometry::covariant(g.lc, u, u);
    dy.head(d) = frame_matrix(model, y.head(d)).transpose() * u;
  };
  ode::State y0(2 * d);
  y0 << start.pos, start.vel;
  ode::Options opts;
  opts.rtol = tol;
  opts.atol = tol;
  return Trajectory(model, ode::integrate(rhs, 0.0, y0, T, opts), tol);
}

riccati::Params params_from_velocity(const HeisenbergModel& model, const Vec& vel) {
  require_valid(model);
  if (vel.size() != model.dim()) throw DomainError("velocity must have 2n+1 components");
  riccati::Params p;
  p.n = model.n;
  p.b = -model.eps * vel.tail(2 * model.n).norm() / 2.0;
  p.c = model.eps * vel(0) / 2.0;
  return p;
}

AdaptedFrame adapted_frame(const HeisenbergModel& model, const Trajectory& traj, int samples) {
  require_valid(model);
  if (traj.model().n != model.n || traj.model().eps != model.eps)
    throw DomainError("adapted_frame: trajectory belongs to a different model");
  const Geometry g = make_geometry(model);
  const int n = model.n, d = model.dim();
  const Mat& J = g.model.contact.J;

  const GeodesicState s0 = traj.at(traj.t_begin());
  const double uh = s0.vel.tail(2 * n).norm();
  if (!(uh > 0.0))
    throw DegenerateDirectionError("adapted frame needs a nonzero horizontal velocity");

  AdaptedFrame out;
  const riccati::Params p = params_from_velocity(model, s0.vel);
  out.b = p.b;
  out.c = p.c;
  out.W = riccati::build_blocks(p).W();

  auto v1_of = [&](const Vec& u) {
    Vec h = u;
    h(0) = 0.0;
    return Vec(h / h.norm());
  };

  // Parallel transport of v_3..v_2n alongside the stored geodesic.
  const int m = 2 * n - 2;
  ode::DenseSolution transport;
  if (m > 0) {
    const std::vector<Vec> basis = geometry::j_adapted_basis(g.model, v1_of(s0.vel));
    ode::State a0(m * d);
    for (int k = 0; k < m; ++k) a0.segment(k * d, d) = basis[2 + k];
    ode::Rhs rhs = [&](double t, const ode::State& y, ode::State& dy) {
      const Vec u = traj.at(t).vel;
      for (int k = 0; k < m; ++k)
        dy.segment(k * d, d) = -geometry::covariant(g.lc, u, y.segment(k * d, d));
    };
    ode::Options opts;
    opts.rtol = traj.tol();
    opts.atol = traj.tol();
    transport = ode::integrate(rhs, traj.t_begin(), a0, traj.t_end(), opts);
  }

  for (double t : traj.sample_times(samples)) {
    const Vec u = traj.at(t).vel;
    const Vec udot = -geometry::covariant(g.lc, u, u);
    const double norm_h = u.tail(2 * n).norm();

    Mat frame(d, d), deriv(d, d);
    frame.row(0) = geometry::unit(d, 0).transpose();
    deriv.row(0).setZero();
    const Vec v1 = v1_of(u);
    Vec v1dot = udot / norm_h;
    v1dot(0) = 0.0;
    v1dot -= v1 * v1.dot(v1dot);  // |u_H| is conserved; removes drift
    frame.row(1) = v1.transpose();
    deriv.row(1) = v1dot.transpose();
    frame.row(2) = (J * v1).transpose();
    deriv.row(2) = (J * v1dot).transpose();
    if (m > 0) {
      const Vec a = transport(t);
      for (int k = 0; k < m; ++k) {
        const Vec ak = a.segment(k * d, d);
        frame.row(3 + k) = ak.transpose();
        deriv.row(3 + k) = (-geometry::covariant(g.lc, u, ak)).transpose();
      }
    }
    // Covariant derivative along the curve: D v/dt = dv/dt + nabla_u v.
    Mat cov(d, d);
    for (int k = 0; k < d; ++k) {
      const Vec vk = frame.row(k).transpose();
      cov.row(k) = deriv.row(k) + geometry::covariant(g.lc, u, vk).transpose();
    }
    out.residual = std::max(out.residual, (cov - out.W * frame).cwiseAbs().maxCoeff());
    out.orthonormality = std::max(
        out.orthonormality,
        (frame * g.model.algebra.metric * frame.transpose() - Mat::Identity(d, d)).cwiseAbs().maxCoeff());
    out.t.push_back(t);
    out.frames.push_back(std::move(frame));
  }
  return out;
}

Mat jacobi_matrix(const riccati::Params& p, double t, double tol) {
  riccati::require_valid(p);
  if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("jacobi_matrix: t must be >= 0");
  const riccati::BlockMatrices blocks = riccati::build_blocks(p);
  const Mat W = blocks.W(), R = blocks.R();
  const Mat W2R = W * W + R;
  const int d = static_cast<int>(W.rows());
  const int dd = d * d;
  if (t == 0.0) return Mat::Zero(d, d);

  ode::Rhs rhs = [&](double, const ode::State& y, ode::State& dy) {
    Eigen::Map<const Mat> A(y.data(), d, d);
    Eigen::Map<const Mat> Ad(y.data() + dd, d, d);
    Eigen::Map<Mat>(dy.data(), d, d) = Ad;
    Eigen::Map<Mat>(dy.data() + dd, d, d) = -2.0 * Ad * W - A * W2R;
  };
  ode::State y0 = ode::State::Zero(2 * dd);
  Eigen::Map<Mat>(y0.data() + dd, d, d).setIdentity();
  ode::Options opts;
  opts.rtol = tol;
  opts.atol = tol;
  const ode::State y = ode::solve(rhs, 0.0, y0, t, opts);
  return Eigen::Map<const Mat>(y.data(), d, d);
}

double jacobi_determinant(const riccati::Params& p, double t, double tol) {
  return jacobi_matrix(p, t, tol).determinant();
}

double jacobi_determinant(const HeisenbergModel& model, const GeodesicState& start, double t,
                          double tol) {
  require_state(model, start);
  if (!(start.vel.tail(2 * model.n).norm() > 0.0))
    throw DegenerateDirectionError("jacobi_determinant needs a nonzero horizontal velocity");
  return jacobi_determinant(params_from_velocity(model, start.vel), t, tol);
}

}  // namespace mcplab::heisenberg
