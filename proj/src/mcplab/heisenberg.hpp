#pragma once

// Coordinate model of H^{2n+1} with the eps-metric. Coordinates are
// (x_1..x_n, y_1..y_n, z); velocities are coefficients in the orthonormal
// frame (v_0 = V/eps, X_1..X_n, Y_1..Y_n).

#include <Eigen/Dense>
#include <iosfwd>
#include <vector>

#include "mcplab/frame_algebra.hpp"
#include "mcplab/ode.hpp"
#include "mcplab/riccati.hpp"

namespace mcplab::heisenberg {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct HeisenbergModel {
  int n = 1;
  double eps = 1.0;

  int dim() const { return 2 * n + 1; }
};

void require_valid(const HeisenbergModel& model);

/// Row k holds the coordinate components of the k-th frame vector at `pos`.
Mat frame_matrix(const HeisenbergModel& model, const Vec& pos);

struct GeodesicState {
  Vec pos;
  Vec vel;
};

class Trajectory {
 public:
  Trajectory(HeisenbergModel model, ode::DenseSolution dense, double tol);

  const HeisenbergModel& model() const { return model_; }
  double t_begin() const { return dense_.t_begin(); }
  double t_end() const { return dense_.t_end(); }
  double tol() const { return tol_; }
  std::size_t steps() const { return dense_.steps(); }

  GeodesicState at(double t) const;
  /// `count` >= 2 evenly spaced samples including both endpoints.
  std::vector<double> sample_times(int count) const;

  /// Columns t, x1..xn, y1..yn, z, u0..u2n.
  void write_csv(std::ostream& os, int count) const;

 private:
  HeisenbergModel model_;
  ode::DenseSolution dense_;
  double tol_;
};

/// Integrates the geodesic equation from `start` over [0, T] (T may be negative).
Trajectory geodesic_flow(const HeisenbergModel& model, const GeodesicState& start, double T,
                         double tol = 1e-10);

/// b = -eps |u_H| / 2 and c = <u, V> / 2 = eps u_0 / 2.
riccati::Params params_from_velocity(const HeisenbergModel& model, const Vec& vel);

struct AdaptedFrame {
  double b = 0.0;
  double c = 0.0;
  Mat W;                    // (2n+1) x (2n+1), constant
  std::vector<double> t;    // sample times
  std::vector<Mat> frames;  // row k = v_k(t) in the left-invariant frame
  double residual = 0.0;    // max |D v/dt - W v| over samples
  double orthonormality = 0.0;
};

/// Moving frame v_0 = V/eps, v_1 = u_H/|u_H|, v_2 = J v_1, v_3.. parallel,
/// sampled at `samples` points. Throws DegenerateDirectionError when u_H = 0.
AdaptedFrame adapted_frame(const HeisenbergModel& model, const Trajectory& traj,
                           int samples = 201);

/// A(t) solving A'' + 2 A' W + A W^2 + A R = 0, A(0) = 0, A'(0) = I, with the
/// Heisenberg blocks for `p` (full (2n+1)-dimensional system).
Mat jacobi_matrix(const riccati::Params& p, double t, double tol = 1e-12);
double jacobi_determinant(const riccati::Params& p, double t, double tol = 1e-12);
/// Same, with (b, c) read off the initial velocity.
double jacobi_determinant(const HeisenbergModel& model, const GeodesicState& start, double t,
                          double tol = 1e-12);

}  // namespace mcplab::heisenberg
