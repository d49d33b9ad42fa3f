#pragma once

// Dormand-Prince 5(4) with the fourth-order continuous extension.

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <vector>

namespace mcplab::ode {

using State = Eigen::VectorXd;
/// dy/dt = f(t, y); the callee writes into `dy` (already sized).
using Rhs = std::function<void(double t, const State& y, State& dy)>;

struct Options {
  double rtol = 1e-10;
  double atol = 1e-10;
  double initial_step = 0.0;  // 0 selects automatically
  double max_step = std::numeric_limits<double>::infinity();
  long max_steps = 5'000'000;
};

/// Piecewise interpolant over every accepted step. Valid anywhere between
/// the start and end time, in either integration direction.
class DenseSolution {
 public:
  double t_begin() const noexcept { return t_begin_; }
  double t_end() const noexcept { return t_end_; }
  const State& final_state() const { return final_; }
  std::size_t steps() const noexcept { return segments_.size(); }
  long rhs_evaluations() const noexcept { return nfev_; }

  State operator()(double t) const;

 private:
  friend DenseSolution integrate(const Rhs&, double, const State&, double, const Options&);

  struct Segment {
    double t0;
    double h;
    State r1, r2, r3, r4, r5;
  };
  double t_begin_ = 0.0;
  double t_end_ = 0.0;
  State final_;
  std::vector<Segment> segments_;
  long nfev_ = 0;
};

/// Integrates from t0 to t1 (t1 < t0 is allowed). Throws IntegrationError on
/// a non-finite state, step-size underflow or exhausted step budget.
DenseSolution integrate(const Rhs& f, double t0, const State& y0, double t1,
                        const Options& opts = {});

/// Convenience: final state only.
State solve(const Rhs& f, double t0, const State& y0, double t1, const Options& opts = {});

}  // namespace mcplab::ode
