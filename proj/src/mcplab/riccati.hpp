#pragma once

// Matrix Riccati machinery for geodesic volume distortion on the Heisenberg
// model and its curvature perturbations. Frame order is the adapted frame
// (v_0 = V/eps, v_1 ~ horizontal velocity, v_2 = J v_1, v_3..v_2n); block 1 is
// the leading 3x3, block 3 the trailing (2n-2)x(2n-2).

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace mcplab::riccati {

using Mat = Eigen::MatrixXd;
using Mat3 = Eigen::Matrix3d;

/// Per-geodesic scalars b = -eps |grad_H f0| / 2, c = <grad f0, V> / 2.
/// Either sign of b is accepted; every scalar output is even in b and in c.
struct Params {
  double b = 0.0;
  double c = 0.0;
  int n = 1;
};

void require_valid(const Params& p);

struct BlockMatrices {
  Mat3 W1;
  Mat3 R1;
  Mat R3;  // (2n-2) x (2n-2)

  int n() const { return static_cast<int>(R3.rows()) / 2 + 1; }
  Mat W() const;  // (2n+1) x (2n+1)
  Mat R() const;
};

/// W1 = [[0,0,b],[0,0,c],[-b,-c,0]];
/// R1 = rbar1 + [[b^2, bc, 0],[bc, c^2, 0],[0, 0, c^2 - 3b^2]]; R3 = rbar3 + c^2 I.
BlockMatrices build_blocks(const Params& p, const Mat3& rbar1, const Mat& rbar3);
BlockMatrices build_blocks(const Params& p);  // rbar = 0, the Heisenberg case

/// -R - F^2 - F W - W^T F.
Mat riccati_rhs(const Mat& F, const Mat& W, const Mat& R);

struct RiccatiSolution {
  std::vector<double> t;
  std::vector<Mat3> G1;
  std::vector<Mat> G3;
  std::vector<Mat3> F1;      // F_1(1-t) = G_1(t)^{-1}, valid where regular[i]
  std::vector<double> trF3;  // tr F_3(1-t), valid where regular[i]
  std::vector<bool> regular;
  double max_abs_G2 = 0.0;  // off-diagonal blocks of X and Y, identically zero when R is block diagonal
};

/// Solves G' = -G R G - I - W G - G W^T, G(0) = 0, over the full
/// (2n+1)-dimensional system through the linear pair G = X Y^{-1}:
/// X' = -Y - W X, Y' = R X + W^T Y, X(0) = 0, Y(0) = I. Then F = Y X^{-1}.
/// G entries are NaN where G blows up; points where X is singular are irregular.
RiccatiSolution integrate_inverse_riccati(const Params& p, const BlockMatrices& blocks,
                                          const std::vector<double>& t_grid, double tol = 1e-12);

struct ClosedForm {
  Mat3 F1;           // F_1(1-t)
  double F3_scalar;  // F_3(1-t) = F3_scalar * I, i.e. -c cot(ct)
};

/// Heisenberg closed forms at parameter t. Throws SingularityError naming
/// "sin(ct)" or "K1" at a pole.
ClosedForm closed_forms(const Params& p, double t);

struct TraceBounds {
  double trF1 = 0.0;  // tr F_1(1-t)
  double trF3 = 0.0;  // tr F_3(1-t)
  bool ok = false;    // t trF1 >= -5 and t trF3 >= -(2n-2), up to tol
};

/// Requires |c| < pi (RegimeError) and 0 < t <= 1.
TraceBounds trace_bounds(const Params& p, double t, double tol = 1e-9);

/// g(t) = t (b^2+c^2)(cos 2ct - 1) + t^2 b^2 c sin 2ct, literally.
double g_function(const Params& p, double t);
/// tr F_1(1-t) as the literal rational expression in b, c, t (0/0 at c = 0).
double trace_f1_rational(const Params& p, double t);

/// det of the Jacobi matrix A(t) with A(0)=0, A'(0)=I for the Heisenberg
/// curvature: t s (s + b^2 t^3 phi(ct)) s^{2n-2}, s = sin(ct)/c. Equals
/// g(t) / (-2 c^4) times the block-3 factor, without the removable poles.
double jacobian_closed_form(const Params& p, double t);
/// Block-1 factor alone, t s (s + b^2 t^3 phi(ct)).
double jacobian_block1(const Params& p, double t);

/// Smallest t* in (0, 1] where the Jacobi determinant vanishes, or none.
std::optional<double> conjugate_time(const Params& p);

/// True iff the smallest eigenvalue of (F - Ftilde) is >= -tol. Inputs must be
/// symmetric to 1e-9 (DomainError otherwise).
bool psd_compare(const Mat& F, const Mat& Ftilde, double tol = 1e-9);
double min_eigenvalue_difference(const Mat& F, const Mat& Ftilde);

/// Scalar comparison solution -(2n-2) c cot(ct); zero for n = 1.
double f3_tilde(const Params& p, double t);

}  // namespace mcplab::riccati
