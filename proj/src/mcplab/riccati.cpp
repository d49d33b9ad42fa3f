#include "mcplab/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mcplab/errors.hpp"
#include "mcplab/ode.hpp"
#include "mcplab/special.hpp"

namespace mcplab::riccati {
namespace {

using special::c_cot;
using special::kappa;
using special::phi;
using special::sin_over;

constexpr double kPi = std::numbers::pi;

// s + b^2 t^3 phi(ct); the second factor of the block-1 determinant.
double q_factor(const Params& p, double t) {
  return sin_over(p.c, t) + p.b * p.b * t * t * t * phi(p.c * t);
}

// d/dt of q_factor: cos(ct) + b^2 t s.
double q_factor_dot(const Params& p, double t) {
  return std::cos(p.c * t) + p.b * p.b * t * sin_over(p.c, t);
}

void require_symmetric(const Mat& m, double tol, const char* what) {
  if (m.rows() != m.cols()) throw DomainError(std::string(what) + ": not square");
  if (m.size() > 0 && (m - m.transpose()).cwiseAbs().maxCoeff() > tol)
    throw DomainError(std::string(what) + ": not symmetric");
}

}  // namespace

void require_valid(const Params& p) {
  if (p.n < 1) throw DomainError("riccati: n must be >= 1");
  if (!std::isfinite(p.b) || !std::isfinite(p.c)) throw DomainError("riccati: b and c must be finite");
}

Mat BlockMatrices::W() const {
  const int d = static_cast<int>(R3.rows()) + 3;
  Mat w = Mat::Zero(d, d);
  w.topLeftCorner<3, 3>() = W1;
  return w;
}

Mat BlockMatrices::R() const {
  const int m = static_cast<int>(R3.rows());
  Mat r = Mat::Zero(m + 3, m + 3);
  r.topLeftCorner<3, 3>() = R1;
  r.bottomRightCorner(m, m) = R3;
  return r;
}

BlockMatrices build_blocks(const Params& p, const Mat3& rbar1, const Mat& rbar3) {
  require_valid(p);
  const int m = 2 * p.n - 2;
  require_symmetric(rbar1, 1e-12, "build_blocks rbar1");
  require_symmetric(rbar3, 1e-12, "build_blocks rbar3");
  if (rbar3.rows() != m) throw DomainError("build_blocks: rbar3 must be (2n-2) x (2n-2)");
  const double b = p.b, c = p.c;
  BlockMatrices out;
  out.W1 << 0, 0, b, 0, 0, c, -b, -c, 0;
  Mat3 base;
  base << b * b, b * c, 0, b * c, c * c, 0, 0, 0, c * c - 3 * b * b;
  out.R1 = rbar1 + base;
  out.R3 = rbar3 + c * c * Mat::Identity(m, m);
  return out;
}

BlockMatrices build_blocks(const Params& p) {
  require_valid(p);
  const int m = 2 * p.n - 2;
  return build_blocks(p, Mat3::Zero(), Mat::Zero(m, m));
}

Mat riccati_rhs(const Mat& F, const Mat& W, const Mat& R) {
  if (F.rows() != F.cols() || W.rows() != F.rows() || W.cols() != F.cols() ||
      R.rows() != F.rows() || R.cols() != F.cols())
    throw DomainError("riccati_rhs: dimension mismatch");
  return -R - F * F - F * W - W.transpose() * F;
}

RiccatiSolution integrate_inverse_riccati(const Params& p, const BlockMatrices& blocks,
                                          const std::vector<double>& t_grid, double tol) {
  require_valid(p);
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw DomainError("integrate_inverse_riccati: grid must start at 0");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]) || !(t_grid[i] < 1.0))
      throw DomainError("integrate_inverse_riccati: grid must be increasing in [0,1)");

  const Mat W = blocks.W();
  const Mat R = blocks.R();
  const int d = static_cast<int>(W.rows());
  const int m = d - 3;
  const Mat I = Mat::Identity(d, d);

  // G = X Y^{-1}; the linear system stays finite where G blows up.
  const std::size_t dd = static_cast<std::size_t>(d) * d;
  ode::Rhs rhs = [&](double, const ode::State& y, ode::State& dy) {
    Eigen::Map<const Mat> X(y.data(), d, d);
    Eigen::Map<const Mat> Y(y.data() + dd, d, d);
    Eigen::Map<Mat> dX(dy.data(), d, d);
    Eigen::Map<Mat> dY(dy.data() + dd, d, d);
    dX = -Y - W * X;
    dY = R * X + W.transpose() * Y;
  };

  RiccatiSolution sol;
  sol.t = t_grid;
  const std::size_t np = t_grid.size();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  sol.G1.assign(np, Mat3::Constant(nan));
  sol.G3.assign(np, Mat::Constant(m, m, nan));
  sol.F1.assign(np, Mat3::Constant(nan));
  sol.trF3.assign(np, nan);
  sol.regular.assign(np, false);

  ode::State y0 = ode::State::Zero(2 * dd);
  Eigen::Map<Mat>(y0.data() + dd, d, d) = I;
  ode::Options opts;
  opts.rtol = tol;
  opts.atol = tol;
  const ode::DenseSolution dense = ode::integrate(rhs, 0.0, y0, t_grid.back(), opts);

  for (std::size_t i = 0; i < np; ++i) {
    const double t = t_grid[i];
    if (t == 0.0) continue;
    const ode::State y = dense(t);
    Eigen::Map<const Mat> X(y.data(), d, d);
    Eigen::Map<const Mat> Y(y.data() + dd, d, d);
    if (m > 0)
      sol.max_abs_G2 = std::max({sol.max_abs_G2, X.topRightCorner(3, m).cwiseAbs().maxCoeff(),
                                 X.bottomLeftCorner(m, 3).cwiseAbs().maxCoeff(),
                                 Y.topRightCorner(3, m).cwiseAbs().maxCoeff(),
                                 Y.bottomLeftCorner(m, 3).cwiseAbs().maxCoeff()});

    Eigen::FullPivLU<Mat> ly(Y);
    if (ly.isInvertible()) {
      const Mat G = X * ly.inverse();
      sol.G1[i] = G.topLeftCorner<3, 3>();
      sol.G3[i] = G.bottomRightCorner(m, m);
    }
    Eigen::FullPivLU<Mat> lx(X);
    lx.setThreshold(1e-12);
    if (!lx.isInvertible()) continue;
    const Mat F = Y * lx.inverse();
    if (!F.allFinite()) continue;
    sol.F1[i] = F.topLeftCorner<3, 3>();
    sol.trF3[i] = m > 0 ? F.bottomRightCorner(m, m).trace() : 0.0;
    sol.regular[i] = true;
  }
  return sol;
}

ClosedForm closed_forms(const Params& p, double t) {
  require_valid(p);
  if (!(t > 0.0) || !(t < 1.0)) throw DomainError("closed_forms: t must lie in (0,1)");
  const double b = p.b, c = p.c;
  const double x = c * t;
  if (x != 0.0 && std::abs(std::sin(x)) < 1e-14) throw SingularityError("sin(ct)", t);
  const double kap = kappa(x);
  const double khat = 1.0 + b * b * t * t * kap;  // K1 = -c^2 khat
  if (!std::isfinite(khat) || std::abs(khat) < 1e-14) throw SingularityError("K1", t);
  const double cc = c_cot(c, t);
  ClosedForm out;
  Mat3& F = out.F1;
  F(0, 0) = -1.0 / (t * khat);
  F(0, 1) = F(1, 0) = b * c * t * kap / khat;
  F(0, 2) = F(2, 0) = b * b * b * t * t * kap / khat;
  F(1, 1) = -(b * b * t * t * kap + 1.0 - x * x * kap) / (t * khat);
  F(1, 2) = F(2, 1) = c * b * b * t * t * kap / khat;
  F(2, 2) = -t * b * b / khat - cc;
  out.F3_scalar = -cc;
  return out;
}

double jacobian_block1(const Params& p, double t) {
  return t * sin_over(p.c, t) * q_factor(p, t);
}

double jacobian_closed_form(const Params& p, double t) {
  require_valid(p);
  return jacobian_block1(p, t) * std::pow(sin_over(p.c, t), 2 * p.n - 2);
}

TraceBounds trace_bounds(const Params& p, double t, double tol) {
  require_valid(p);
  if (!(std::abs(p.c) < kPi)) throw RegimeError("trace_bounds: requires |c| < pi");
  if (!(t > 0.0) || !(t <= 1.0)) throw DomainError("trace_bounds: t must lie in (0,1]");
  const double s = sin_over(p.c, t);
  const double cs = std::cos(p.c * t);
  // tr F_1(1-t) = -d/dt ln(t s q)
  const double trF1 = -(1.0 / t + cs / s + q_factor_dot(p, t) / q_factor(p, t));
  const double trF3 = -(2.0 * p.n - 2.0) * cs / s;
  TraceBounds out{trF1, trF3, false};
  out.ok = t * trF1 >= -5.0 - tol && t * trF3 >= -(2.0 * p.n - 2.0) - tol;
  return out;
}

double g_function(const Params& p, double t) {
  const double b2 = p.b * p.b, c = p.c;
  return t * (b2 + c * c) * (std::cos(2 * c * t) - 1) + t * t * b2 * c * std::sin(2 * c * t);
}

double trace_f1_rational(const Params& p, double t) {
  const double b2 = p.b * p.b, c = p.c;
  const double cos2 = std::cos(2 * c * t), sin2 = std::sin(2 * c * t);
  const double num = (b2 + c * c) * (cos2 - 1) + 2 * t * t * b2 * c * c * cos2 - 2 * t * c * c * c * sin2;
  const double den = t * (b2 + c * c) * (cos2 - 1) + t * t * b2 * c * sin2;
  return -num / den;
}

std::optional<double> conjugate_time(const Params& p) {
  require_valid(p);
  if (p.b == 0.0 && p.c == 0.0) return std::nullopt;
  // Zeros of sin(ct) are known in closed form; the remaining factor is bracketed.
  double best = 2.0;
  if (p.c != 0.0) {
    const double ts = kPi / std::abs(p.c);
    if (ts <= 1.0) best = ts;
  }
  const double limit = std::min(1.0, best);
  constexpr double step = 1e-3;
  double t_prev = 0.0;
  double q_prev = 1.0;  // q(t) / t -> 1 as t -> 0+
  const int steps = static_cast<int>(std::ceil(limit / step));
  for (int i = 1; i <= steps; ++i) {
    const double t = std::min(limit, i * step);
    const double q = q_factor(p, t);
    if (q == 0.0) return std::min(best, t);
    if ((q > 0) != (q_prev > 0)) {
      double lo = t_prev, hi = t;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if ((q_factor(p, mid) > 0) == (q_prev > 0)) lo = mid;
        else hi = mid;
      }
      return std::min(best, 0.5 * (lo + hi));
    }
    t_prev = t;
    q_prev = q;
  }
  if (best <= 1.0) return best;
  return std::nullopt;
}

double min_eigenvalue_difference(const Mat& F, const Mat& Ftilde) {
  if (F.rows() != Ftilde.rows() || F.cols() != Ftilde.cols())
    throw DomainError("psd_compare: dimension mismatch");
  require_symmetric(F, 1e-9, "psd_compare F");
  require_symmetric(Ftilde, 1e-9, "psd_compare Ftilde");
  const Mat diff = F - Ftilde;
  const Mat sym = 0.5 * (diff + diff.transpose());
  return Eigen::SelfAdjointEigenSolver<Mat>(sym, Eigen::EigenvaluesOnly).eigenvalues()[0];
}

bool psd_compare(const Mat& F, const Mat& Ftilde, double tol) {
  return min_eigenvalue_difference(F, Ftilde) >= -tol;
}

double f3_tilde(const Params& p, double t) {
  require_valid(p);
  if (p.n == 1) return 0.0;
  const double x = p.c * t;
  if (x != 0.0 && std::abs(std::sin(x)) < 1e-14) throw SingularityError("sin(ct)", t);
  return -(2.0 * p.n - 2.0) * c_cot(p.c, t);
}

}  // namespace mcplab::riccati
