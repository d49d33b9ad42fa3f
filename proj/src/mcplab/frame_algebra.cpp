#include "mcplab/frame_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "mcplab/errors.hpp"

namespace mcplab::geometry {
namespace {

constexpr double kJacobiTol = 1e-12;
constexpr double kContactTol = 1e-10;

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

double bracket_scale(const FrameAlgebra& alg) {
  double m = 0.0;
  for (double x : alg.bracket.data()) m = std::max(m, std::abs(x));
  return m;
}

Check make_check(std::string name, double residual, double tol) {
  return Check{std::move(name), residual, residual <= tol};
}

}  // namespace

std::string to_string(ConnectionKind kind) {
  return kind == ConnectionKind::LeviCivita ? "levi-civita" : "tanaka-webster";
}

Vec unit(int dim, int i) {
  Vec e = Vec::Zero(dim);
  e[i] = 1.0;
  return e;
}

ContactModel build_heisenberg_algebra(int n, double eps) {
  if (n < 1) throw DomainError("heisenberg: n must be >= 1");
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("heisenberg: eps must be > 0");
  const int d = 2 * n + 1;
  ContactModel m;
  m.algebra.dim = d;
  m.algebra.bracket = Tensor3(d);
  m.algebra.metric = Mat::Identity(d, d);
  for (int i = 1; i <= n; ++i) {
    m.algebra.bracket(i, n + i, 0) = eps;
    m.algebra.bracket(n + i, i, 0) = -eps;
  }
  m.contact.eps = eps;
  m.contact.reeb = Vec::Zero(d);
  m.contact.reeb[0] = eps;
  m.contact.eta = Vec::Zero(d);
  m.contact.eta[0] = 1.0 / eps;
  m.contact.J = Mat::Zero(d, d);
  for (int i = 1; i <= n; ++i) {
    m.contact.J(n + i, i) = 1.0;   // J X_i = Y_i
    m.contact.J(i, n + i) = -1.0;  // J Y_i = -X_i
  }
  return m;
}

ContactModel build_berger_algebra(double kappa, double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("berger: eps must be > 0");
  if (!std::isfinite(kappa)) throw DomainError("berger: kappa must be finite");
  ContactModel m = build_heisenberg_algebra(1, eps);
  Tensor3& c = m.algebra.bracket;
  // [e0, X] = (kappa/eps) Y, [e0, Y] = -(kappa/eps) X
  c(0, 1, 2) = kappa / eps;
  c(1, 0, 2) = -kappa / eps;
  c(0, 2, 1) = -kappa / eps;
  c(2, 0, 1) = kappa / eps;
  return m;
}

ContactModel rescale_eps(const ContactModel& model, double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("rescale: eps must be > 0");
  ContactModel out = model;
  const FrameAlgebra& alg = model.algebra;
  const ContactStructure& cs = model.contact;
  const int d = alg.dim;
  // Horizontal projector P x = x - eta(x) V; g' = P^T g P + eps^2 eta eta^T.
  const Mat P = Mat::Identity(d, d) - cs.reeb * cs.eta.transpose();
  out.algebra.metric = P.transpose() * alg.metric * P + eps * eps * cs.eta * cs.eta.transpose();
  out.contact.eps = eps;
  return out;
}

// --- frame arithmetic -------------------------------------------------------

double inner(const FrameAlgebra& alg, const Vec& a, const Vec& b) {
  return a.dot(alg.metric * b);
}

double norm(const FrameAlgebra& alg, const Vec& a) { return std::sqrt(inner(alg, a, a)); }

Vec lie_bracket(const FrameAlgebra& alg, const Vec& a, const Vec& b) {
  const int d = alg.dim;
  Vec out = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = a[i] * b[j];
      if (w == 0.0) continue;
      for (int k = 0; k < d; ++k) out[k] += w * alg.bracket(i, j, k);
    }
  }
  return out;
}

double d_eta(const FrameAlgebra& alg, const ContactStructure& cs, const Vec& a, const Vec& b) {
  return -cs.eta.dot(lie_bracket(alg, a, b));
}

Vec horizontal(const ContactStructure& cs, const Vec& a) { return a - cs.eta.dot(a) * cs.reeb; }

std::vector<Vec> horizontal_spanning_set(const ContactStructure& cs) {
  const int d = static_cast<int>(cs.eta.size());
  std::vector<Vec> out;
  out.reserve(d);
  for (int i = 0; i < d; ++i) {
    Vec h = horizontal(cs, unit(d, i));
    if (max_abs(h) > 1e-14) out.push_back(std::move(h));
  }
  return out;
}

// --- validation -------------------------------------------------------------

double jacobi_residual(const FrameAlgebra& alg) {
  const int d = alg.dim;
  const Tensor3& c = alg.bracket;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += c(i, j, m) * c(m, k, l) + c(j, k, m) * c(m, i, l) + c(k, i, m) * c(m, j, l);
          worst = std::max(worst, std::abs(s));
        }
  return worst;
}

std::vector<Check> algebra_checks(const FrameAlgebra& alg) {
  std::vector<Check> out;
  const int d = alg.dim;
  const bool shapes = d >= 1 && alg.bracket.dim() == d && alg.metric.rows() == d &&
                      alg.metric.cols() == d;
  out.push_back(make_check("shape", shapes ? 0.0 : 1.0, 0.0));
  if (!shapes) return out;

  bool finite = alg.metric.allFinite();
  for (double x : alg.bracket.data()) finite = finite && std::isfinite(x);
  out.push_back(make_check("finite", finite ? 0.0 : 1.0, 0.0));
  if (!finite) return out;

  double anti = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        anti = std::max(anti, std::abs(alg.bracket(i, j, k) + alg.bracket(j, i, k)));
  const double scale = std::max(1.0, bracket_scale(alg));
  out.push_back(make_check("bracket_antisymmetry", anti, kJacobiTol * scale));
  out.push_back(make_check("jacobi_identity", jacobi_residual(alg), kJacobiTol * scale * scale));

  const double sym = (alg.metric - alg.metric.transpose()).cwiseAbs().maxCoeff();
  out.push_back(make_check("metric_symmetric", sym, kJacobiTol * std::max(1.0, alg.metric.cwiseAbs().maxCoeff())));
  const Mat gs = 0.5 * (alg.metric + alg.metric.transpose());
  const double lmin = Eigen::SelfAdjointEigenSolver<Mat>(gs, Eigen::EigenvaluesOnly).eigenvalues()[0];
  out.push_back(Check{"metric_positive_definite", lmin > 0 ? 0.0 : -lmin, lmin > 0});
  return out;
}

std::vector<Check> contact_checks(const FrameAlgebra& alg, const ContactStructure& cs) {
  std::vector<Check> out;
  const int d = alg.dim;
  const bool shapes = cs.eta.size() == d && cs.reeb.size() == d && cs.J.rows() == d &&
                      cs.J.cols() == d;
  out.push_back(make_check("contact_shape", shapes ? 0.0 : 1.0, 0.0));
  if (!shapes) return out;
  out.push_back(make_check("odd_dimension", d % 2 == 1 && d >= 3 ? 0.0 : 1.0, 0.0));
  const bool eps_ok = cs.eps > 0 && std::isfinite(cs.eps);
  out.push_back(make_check("eps_positive", eps_ok ? 0.0 : 1.0, 0.0));
  if (!eps_ok || !cs.eta.allFinite() || !cs.reeb.allFinite() || !cs.J.allFinite()) {
    out.push_back(make_check("contact_finite", 1.0, 0.0));
    return out;
  }
  const double scale =
      std::max({1.0, cs.eps * cs.eps, bracket_scale(alg), cs.J.cwiseAbs().maxCoeff()});
  const double tol = kContactTol * scale;

  out.push_back(make_check("reeb_normalization", std::abs(cs.eta.dot(cs.reeb) - 1.0), tol));
  double ker = 0.0;
  for (int j = 0; j < d; ++j) ker = std::max(ker, std::abs(d_eta(alg, cs, cs.reeb, unit(d, j))));
  out.push_back(make_check("reeb_kernel_of_deta", ker, tol));
  out.push_back(make_check("J_kills_reeb", max_abs(cs.J * cs.reeb), tol));

  const auto hs = horizontal_spanning_set(cs);
  double jj = 0.0, compat = 0.0, perp = 0.0;
  for (const Vec& x : hs) {
    jj = std::max(jj, max_abs(cs.J * (cs.J * x) + x));
    perp = std::max(perp, std::abs(inner(alg, cs.reeb, x)));
    for (const Vec& y : hs)
      compat = std::max(compat, std::abs(d_eta(alg, cs, x, y) - inner(alg, x, cs.J * y)));
  }
  out.push_back(make_check("J_complex_on_kernel", jj, tol));
  out.push_back(make_check("metric_compatibility", compat, tol));
  out.push_back(make_check("reeb_length", std::abs(norm(alg, cs.reeb) - cs.eps), tol));
  out.push_back(make_check("reeb_orthogonal_to_kernel", perp, tol));
  return out;
}

void require_valid(const FrameAlgebra& alg) {
  for (const Check& c : algebra_checks(alg))
    if (!c.passed) throw ModelError(c.name, "residual " + std::to_string(c.residual));
}

void require_valid(const ContactModel& model) {
  require_valid(model.algebra);
  for (const Check& c : contact_checks(model.algebra, model.contact))
    if (!c.passed) throw ModelError(c.name, "residual " + std::to_string(c.residual));
}

// --- connections ------------------------------------------------------------

ConnectionCoeffs levi_civita(const FrameAlgebra& alg) {
  const int d = alg.dim;
  const Mat& g = alg.metric;
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw std::logic_error("levi_civita: metric is not positive definite");
  const Mat ginv = llt.solve(Mat::Identity(d, d));

  // b(i,j,k) = <[e_i,e_j], e_k>
  Tensor3 b(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m) s += alg.bracket(i, j, m) * g(m, k);
        b(i, j, k) = s;
      }

  ConnectionCoeffs lc;
  lc.gamma = Tensor3(d);
  lc.torsion_free = true;
  lc.kind = ConnectionKind::LeviCivita;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Vec lower(d);
      for (int k = 0; k < d; ++k) lower[k] = 0.5 * (b(i, j, k) - b(j, k, i) + b(k, i, j));
      const Vec up = ginv * lower;
      for (int k = 0; k < d; ++k) lc.gamma(i, j, k) = up[k];
    }
  return lc;
}

ConnectionCoeffs tanaka_webster(const FrameAlgebra& alg, const ContactStructure& cs,
                                const ConnectionCoeffs& lc) {
  const int d = alg.dim;
  if (lc.gamma.dim() != d || cs.eta.size() != d) throw DomainError("tanaka_webster: dimension mismatch");
  ConnectionCoeffs tw;
  tw.gamma = Tensor3(d);
  tw.torsion_free = false;
  tw.kind = ConnectionKind::TanakaWebster;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const Vec ei = unit(d, i), ej = unit(d, j);
      Vec v = covariant(lc, ei, ej) + 0.5 * inner(alg, cs.reeb, ej) * (cs.J * ei) -
              0.5 * inner(alg, cs.J * ei, ej) * cs.reeb +
              0.5 * inner(alg, cs.reeb, ei) * (cs.J * ej);
      for (int k = 0; k < d; ++k) tw.gamma(i, j, k) = v[k];
    }
  return tw;
}

Vec covariant(const ConnectionCoeffs& conn, const Vec& a, const Vec& b) {
  const int d = conn.gamma.dim();
  Vec out = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double w = a[i] * b[j];
      if (w == 0.0) continue;
      for (int k = 0; k < d; ++k) out[k] += w * conn.gamma(i, j, k);
    }
  }
  return out;
}

CurvatureData curvature(const FrameAlgebra& alg, const ConnectionCoeffs& conn) {
  const int d = alg.dim;
  if (conn.gamma.dim() != d) throw DomainError("curvature: dimension mismatch");
  const Tensor3& G = conn.gamma;
  const Tensor3& c = alg.bracket;
  CurvatureData out;
  out.kind = conn.kind;
  out.endo = Tensor4(d);
  out.riem = Tensor4(d);
  out.ricci = Mat::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int p = 0; p < d; ++p) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += G(j, k, m) * G(i, m, p) - G(i, k, m) * G(j, m, p) - c(i, j, m) * G(m, k, p);
          out.endo(i, j, k, p) = s;
        }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int p = 0; p < d; ++p) s += out.endo(i, j, k, p) * alg.metric(p, l);
          out.riem(i, j, k, l) = s;
        }
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += out.endo(i, j, k, i);
      out.ricci(j, k) = s;
    }
  return out;
}

Vec curvature_apply(const CurvatureData& curv, const Vec& a, const Vec& b, const Vec& c) {
  const int d = curv.endo.dim();
  Vec out = Vec::Zero(d);
  for (int i = 0; i < d; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < d; ++j) {
      const double wij = a[i] * b[j];
      if (wij == 0.0) continue;
      for (int k = 0; k < d; ++k) {
        const double w = wij * c[k];
        if (w == 0.0) continue;
        for (int l = 0; l < d; ++l) out[l] += w * curv.endo(i, j, k, l);
      }
    }
  }
  return out;
}

double ricci(const CurvatureData& curv, const Vec& y) { return y.dot(curv.ricci * y); }

ConnectionCoeffs change_frame(const ConnectionCoeffs& conn, const Mat& P) {
  const int d = conn.gamma.dim();
  if (P.rows() != d || P.cols() != d) throw DomainError("change_frame: dimension mismatch");
  // A vector with e-coefficients x has f-coefficients P^{-T} x.
  const Mat to_f = P.transpose().inverse();
  ConnectionCoeffs out;
  out.gamma = Tensor3(d);
  out.torsion_free = conn.torsion_free;
  out.kind = conn.kind;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      const Vec v = to_f * covariant(conn, P.row(a).transpose(), P.row(b).transpose());
      for (int k = 0; k < d; ++k) out.gamma(a, b, k) = v[k];
    }
  return out;
}

double torsion_residual(const FrameAlgebra& alg, const ConnectionCoeffs& conn) {
  const int d = alg.dim;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        worst = std::max(worst, std::abs(conn.gamma(i, j, k) - conn.gamma(j, i, k) -
                                         alg.bracket(i, j, k)));
  return worst;
}

double metric_residual(const FrameAlgebra& alg, const ConnectionCoeffs& conn) {
  const int d = alg.dim;
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const Vec ei = unit(d, i), ej = unit(d, j), ek = unit(d, k);
        const double r = inner(alg, covariant(conn, ei, ej), ek) + inner(alg, ej, covariant(conn, ei, ek));
        worst = std::max(worst, std::abs(r));
      }
  return worst;
}

}  // namespace mcplab::geometry
