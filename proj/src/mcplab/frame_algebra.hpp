#pragma once

// Left-invariant geometry on a Lie group described by structure constants in
// a fixed frame e_0..e_{d-1}. Vectors are coefficient columns in that frame;
// every field is left-invariant, so connections and curvatures are constant
// arrays.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mcplab/tensor.hpp"

namespace mcplab::geometry {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct FrameAlgebra {
  int dim = 0;
  Tensor3 bracket;  // bracket(i,j,k) = c^k_ij, [e_i,e_j] = sum_k c^k_ij e_k
  Mat metric;       // g_ij = <e_i, e_j>
};

struct ContactStructure {
  Vec eta;   // contact form on the frame
  Vec reeb;  // Reeb field V
  Mat J;     // (J x)_r = sum_c J(r,c) x_c
  double eps = 1.0;
};

struct ContactModel {
  FrameAlgebra algebra;
  ContactStructure contact;
};

enum class ConnectionKind { LeviCivita, TanakaWebster };

std::string to_string(ConnectionKind kind);

struct ConnectionCoeffs {
  Tensor3 gamma;  // gamma(i,j,k) = Gamma^k_ij, nabla_{e_i} e_j = sum_k Gamma^k_ij e_k
  bool torsion_free = true;
  ConnectionKind kind = ConnectionKind::LeviCivita;
};

struct CurvatureData {
  Tensor4 riem;  // riem(i,j,k,l) = <Rm(e_i,e_j)e_k, e_l>
  Tensor4 endo;  // endo(i,j,k,l) = l-th frame component of Rm(e_i,e_j)e_k
  Mat ricci;     // ricci(j,k) = trace of v -> Rm(v,e_j)e_k
  ConnectionKind kind = ConnectionKind::LeviCivita;
};

/// Named result of one invariant check.
struct Check {
  std::string name;
  double residual = 0.0;
  bool passed = false;
};

// --- construction -----------------------------------------------------------

/// Heisenberg H^{2n+1} in the orthonormal frame (V/eps, X_1..X_n, Y_1..Y_n);
/// the only brackets are [X_i, Y_i] = V = eps * e_0.
ContactModel build_heisenberg_algebra(int n, double eps);

/// Three-dimensional Sasakian-type algebra with [X,Y] = V, [V,X] = kappa Y,
/// [V,Y] = -kappa X (Berger sphere for kappa > 0, SL(2) cover for kappa < 0,
/// Heisenberg at kappa = 0), in the orthonormal frame (V/eps, X, Y).
ContactModel build_berger_algebra(double kappa, double eps);

/// Same frame fields and contact data with |V| changed to `eps`: the metric on
/// ker(eta) is kept, V stays orthogonal to it. The frame is generally no
/// longer orthonormal afterwards.
ContactModel rescale_eps(const ContactModel& model, double eps);

// --- validation -------------------------------------------------------------

/// Antisymmetry, Jacobi identity and positive-definite metric.
std::vector<Check> algebra_checks(const FrameAlgebra& alg);
/// eta(V)=1, i_V deta=0, JV=0, J^2=-1 on ker eta, compatibility, |V|=eps, V perp ker eta.
std::vector<Check> contact_checks(const FrameAlgebra& alg, const ContactStructure& cs);
/// Throws ModelError naming the first failed check.
void require_valid(const FrameAlgebra& alg);
void require_valid(const ContactModel& model);

// --- frame arithmetic -------------------------------------------------------

double inner(const FrameAlgebra& alg, const Vec& a, const Vec& b);
double norm(const FrameAlgebra& alg, const Vec& a);
Vec lie_bracket(const FrameAlgebra& alg, const Vec& a, const Vec& b);
/// deta(a,b) = -eta([a,b]) for left-invariant fields.
double d_eta(const FrameAlgebra& alg, const ContactStructure& cs, const Vec& a, const Vec& b);
/// Projection onto ker(eta) along V.
Vec horizontal(const ContactStructure& cs, const Vec& a);
/// Projections of the frame vectors onto ker(eta); spans the horizontal space.
std::vector<Vec> horizontal_spanning_set(const ContactStructure& cs);
Vec unit(int dim, int i);

// --- connections and curvature ---------------------------------------------

ConnectionCoeffs levi_civita(const FrameAlgebra& alg);
ConnectionCoeffs tanaka_webster(const FrameAlgebra& alg, const ContactStructure& cs,
                                const ConnectionCoeffs& lc);
/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
CurvatureData curvature(const FrameAlgebra& alg, const ConnectionCoeffs& conn);

/// nabla_a b for the left-invariant fields with coefficients a, b.
Vec covariant(const ConnectionCoeffs& conn, const Vec& a, const Vec& b);
/// Rm(a,b)c.
Vec curvature_apply(const CurvatureData& curv, const Vec& a, const Vec& b, const Vec& c);
double ricci(const CurvatureData& curv, const Vec& y);

/// Re-expresses a connection in the frame f_a = sum_i P(a,i) e_i.
ConnectionCoeffs change_frame(const ConnectionCoeffs& conn, const Mat& P);

/// Torsion residual: max |nabla_i e_j - nabla_j e_i - [e_i,e_j]|.
double torsion_residual(const FrameAlgebra& alg, const ConnectionCoeffs& conn);
/// Metric residual: max |<nabla_i e_j, e_k> + <e_j, nabla_i e_k>|.
double metric_residual(const FrameAlgebra& alg, const ConnectionCoeffs& conn);
double jacobi_residual(const FrameAlgebra& alg);

}  // namespace mcplab::geometry
