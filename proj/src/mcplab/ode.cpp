#include "mcplab/ode.hpp"

#include <algorithm>
#include <cmath>

#include "mcplab/errors.hpp"

namespace mcplab::ode {
namespace {

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

double error_norm(const State& err, const State& y0, const State& y1, const Options& o) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < err.size(); ++i) {
    const double sc = o.atol + o.rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    acc += r * r;
  }
  return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(err.size(), 1)));
}

// Hairer-Norsett-Wanner starting step heuristic.
double initial_step(const Rhs& f, double t0, const State& y0, const State& k1, double dir,
                    const Options& o, long& nfev) {
  auto scaled_norm = [&](const State& v) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      const double sc = o.atol + o.rtol * std::abs(y0[i]);
      acc += (v[i] / sc) * (v[i] / sc);
    }
    return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(v.size(), 1)));
  };
  const double dnf = scaled_norm(k1);
  const double dny = scaled_norm(y0);
  double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
  h = std::min(h, o.max_step);
  State y1 = y0 + dir * h * k1;
  State k2(y0.size());
  f(t0 + dir * h, y1, k2);
  ++nfev;
  const double der2 = scaled_norm(k2 - k1) / h;
  const double der12 = std::max(std::abs(der2), dnf);
  const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
  return std::min({100 * h, h1, o.max_step});
}

bool finite(const State& y) { return y.allFinite(); }

}  // namespace

State DenseSolution::operator()(double t) const {
  if (segments_.empty()) return final_;
  const double dir = t_end_ >= t_begin_ ? 1.0 : -1.0;
  // Segments are ordered along the integration direction.
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [dir](double value, const Segment& s) {
                               return dir * value < dir * s.t0;
                             });
  const Segment& s = it == segments_.begin() ? segments_.front() : *(it - 1);
  const double theta = (t - s.t0) / s.h;
  const double theta1 = 1.0 - theta;
  return s.r1 + theta * (s.r2 + theta1 * (s.r3 + theta * (s.r4 + theta1 * s.r5)));
}

DenseSolution integrate(const Rhs& f, double t0, const State& y0, double t1,
                        const Options& opts) {
  DenseSolution sol;
  sol.t_begin_ = t0;
  sol.t_end_ = t1;
  if (!finite(y0)) throw IntegrationError("non-finite initial state", t0);
  if (t1 == t0) {
    sol.final_ = y0;
    return sol;
  }
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const Eigen::Index n = y0.size();

  State y = y0, ynew(n), k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), err(n);
  f(t0, y, k1);
  ++sol.nfev_;
  double h = opts.initial_step > 0 ? opts.initial_step
                                   : initial_step(f, t0, y, k1, dir, opts, sol.nfev_);
  double t = t0;
  long steps = 0;
  double err_prev = 1e-4;

  while (dir * (t1 - t) > 0) {
    if (++steps > opts.max_steps) throw IntegrationError("step budget exhausted", t);
    h = std::min(h, opts.max_step);
    bool last = false;
    if (dir * (t + dir * h - t1) >= 0) {
      h = std::abs(t1 - t);
      last = true;
    }
    const double hs = dir * h;
    if (std::abs(hs) <= 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw IntegrationError("step size underflow", t);

    ytmp = y + hs * a21 * k1;
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + hs, ytmp, k6);
    ynew = y + hs * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
    f(t + hs, ynew, k7);
    sol.nfev_ += 6;

    err = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double en = finite(ynew) && finite(k7) ? error_norm(err, y, ynew, opts)
                                           : std::numeric_limits<double>::infinity();
    if (!std::isfinite(en)) {
      h *= 0.2;
      continue;
    }
    if (en <= 1.0) {
      DenseSolution::Segment seg;
      seg.t0 = t;
      seg.h = hs;
      seg.r1 = y;
      seg.r2 = ynew - y;
      seg.r3 = hs * k1 - seg.r2;
      seg.r4 = seg.r2 - hs * k7 - seg.r3;
      seg.r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
      sol.segments_.push_back(std::move(seg));

      t = last ? t1 : t + hs;
      y = ynew;
      k1 = k7;
      // PI controller (beta = 0.04).
      double fac = 0.9 * std::pow(std::max(en, 1e-10), -0.17) * std::pow(err_prev, 0.04);
      fac = std::clamp(fac, 0.2, 10.0);
      err_prev = std::max(en, 1e-4);
      h *= fac;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
    }
  }
  sol.final_ = y;
  return sol;
}

State solve(const Rhs& f, double t0, const State& y0, double t1, const Options& opts) {
  return integrate(f, t0, y0, t1, opts).final_state();
}

}  // namespace mcplab::ode
