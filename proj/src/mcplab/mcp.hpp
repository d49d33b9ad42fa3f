#pragma once

// Volume-contraction density along Heisenberg geodesics and the
// MCP(0, 2n+3) inequality: grid scans, a sharpness probe and a Monte Carlo
// estimate of the contraction of sets of geodesics.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "mcplab/heisenberg.hpp"
#include "mcplab/range.hpp"
#include "mcplab/riccati.hpp"

namespace mcplab::mcp {

/// D(t) = [g(1-t)/g(1)] [sin(c(1-t))/sin c]^{2n-2}, with the c -> 0 and
/// b -> 0 limits built in. Requires |c| < pi and 0 <= t < 1 (RegimeError /
/// DomainError).
double density(const riccati::Params& p, double t);

/// (1-t)^{2n+3}.
double mcp_bound(int n, double t);

/// The two per-block factors of the density and their sum, as the
/// density is sometimes displayed with a sum in place of the product.
struct DensityReadings {
  double block3 = 0.0;  // sin^{2n-2}(c(1-t)) / sin^{2n-2}(c)
  double block1_printed = 0.0;  // block-1 term with the bracket as displayed
  double sum_reading = 0.0;     // block3 + block1_printed
  double product = 0.0;         // density(p, t)
};
DensityReadings density_readings(const riccati::Params& p, double t);

struct DensityProfile {
  riccati::Params params;
  std::vector<double> t;
  std::vector<double> density;
  std::vector<double> bound;
  std::vector<double> ratio;

  /// Columns b,c,t,density,bound,ratio.
  void write_csv(std::ostream& os) const;
};

DensityProfile density_profile(const riccati::Params& p, const std::vector<double>& t_grid);

struct GridPoint {
  double b = 0.0;
  double c = 0.0;
  double t = 0.0;
  double ratio = 0.0;
};

struct ScanReport {
  int n = 1;
  Range b_range, c_range, t_range;
  double tol = 1e-9;
  std::size_t cells = 0;
  double min_ratio = 0.0;
  GridPoint argmin;
  std::size_t violation_count = 0;
  std::vector<GridPoint> violations;  // first kMaxStoredViolations in grid order

  static constexpr std::size_t kMaxStoredViolations = 1000;
  bool passed() const { return violation_count == 0; }
};

/// Ratio D(t)/(1-t)^{2n+3} over the grid. Every c must satisfy |c| < pi and
/// every t lie in [0, 1). `threads` <= 0 resolves via resolve_threads.
ScanReport mcp_scan(int n, const Range& b, const Range& c, const Range& t, double tol = 1e-9,
                    int threads = 0);

struct SharpnessReport {
  int n = 1;
  double t = 0.0;
  double infimum = 0.0;  // over the whole (b, c) search set
  double argmin_b = 0.0;
  double argmin_c = 0.0;
  double b0_slice_infimum = 0.0;  // b = 0 only
  std::vector<double> b_values;
  std::vector<double> c_values;
};

/// b in {0} plus log-spaced values up to 1e4; c in [0, pi) with log-spaced
/// small values and a linear part up to pi - 1e-3.
SharpnessReport sharpness_scan(int n, double t, int threads = 0);

struct VelocitySet {
  enum class Kind { Ball, Cylinder };
  Kind kind = Kind::Ball;
  double radius = 1.0;      // Ball: |w| <= radius
  double max_horizontal = 1.0;  // Cylinder: |w_H| <= max_horizontal
  double max_vertical = 1.0;    // Cylinder: |<w, V>| = 2|c(w)| <= max_vertical
};

struct MonteCarloOptions {
  int samples = 100000;
  std::uint64_t seed = 1;
  int bootstrap = 200;
  double ode_tol = 1e-9;
  int threads = 0;
  int quadrature_nodes = 0;  // 0 skips the quadrature oracle
};

struct MonteCarloResult {
  heisenberg::HeisenbergModel model;
  Eigen::VectorXd x0;
  VelocitySet set;
  double t = 0.0;
  MonteCarloOptions options;

  double ratio = 0.0;
  double std_error = 0.0;
  double bound = 0.0;  // (1-t)^{2n+3}
  bool bound_holds = false;  // ratio >= bound (1 - 3 std_error)
  long accepted = 0;
  long rejected = 0;
  std::optional<double> quadrature_ratio;
  std::optional<bool> quadrature_agrees;  // |ratio - quadrature| <= 3 std_error
};

/// mu(U_t)/mu(U_0) for U_0 = exp_{x0}(set), estimated as
/// E[det A_w(1-t)] / E[det A_w(1)] over w uniform in `set`, with det A_w from
/// the Jacobi ODE. Samples past a conjugate point are rejected; more than 1%
/// rejected is a DomainError.
MonteCarloResult monte_carlo_contraction(const heisenberg::HeisenbergModel& model,
                                         const Eigen::VectorXd& x0, const VelocitySet& set,
                                         double t, const MonteCarloOptions& opts);

/// The same ratio by tensor Gauss-Legendre quadrature of the closed-form
/// Jacobian over the set (in |w_H|, w_0 coordinates). `nodes` per axis is
/// rounded up to 20, 40, 60 or 100.
double quadrature_contraction(const heisenberg::HeisenbergModel& model, const VelocitySet& set,
                              double t, int nodes = 64);

}  // namespace mcplab::mcp
