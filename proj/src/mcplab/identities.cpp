#include "mcplab/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "mcplab/errors.hpp"

namespace mcplab::geometry {
namespace {

double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

Vec random_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> normal;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = normal(rng);
  return v;
}

Vec nabla_J(const ConnectionCoeffs& lc, const Mat& J, const Vec& a, const Vec& b) {
  return covariant(lc, a, J * b) - J * covariant(lc, a, b);
}

double tensor_diff(const Tensor3& a, const Tensor3& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

// Adapted orthonormal frame v_0 = V/eps, v_1 = Y_H/|Y_H|, v_2 = J v_1, ...
std::vector<Vec> adapted_frame_for(const ContactModel& m, const Vec& y) {
  const Vec yh = horizontal(m.contact, y);
  const Vec v1 = yh / norm(m.algebra, yh);
  std::vector<Vec> frame{m.contact.reeb / m.contact.eps};
  for (Vec& w : j_adapted_basis(m, v1)) frame.push_back(std::move(w));
  return frame;
}

}  // namespace

bool IdentityReport::passed() const {
  if (!preconditions_ok) return false;
  return std::all_of(identities.begin(), identities.end(),
                     [](const IdentityResult& r) { return r.passed; });
}

double IdentityReport::max_residual() const {
  double worst = 0.0;
  for (const auto& r : identities) worst = std::max(worst, r.residual);
  return worst;
}

ModelGeometry compute_geometry(const ContactModel& model) {
  ModelGeometry g;
  g.model = model;
  g.lc = levi_civita(model.algebra);
  g.tw = tanaka_webster(model.algebra, model.contact, g.lc);
  g.curv_lc = curvature(model.algebra, g.lc);
  g.curv_tw = curvature(model.algebra, g.tw);
  return g;
}

std::vector<Vec> j_adapted_basis(const ContactModel& m, const Vec& v) {
  const FrameAlgebra& alg = m.algebra;
  const Mat& J = m.contact.J;
  const int d = alg.dim;
  const int target = d - 1;
  std::vector<Vec> basis;
  auto orthonormalize = [&](Vec w) -> std::optional<Vec> {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) w -= inner(alg, w, b) * b;
    const double nw = norm(alg, w);
    if (nw < 1e-8) return std::nullopt;
    return Vec(w / nw);
  };
  auto add_pair = [&](const Vec& w) {
    auto a = orthonormalize(w);
    if (!a) return;
    basis.push_back(*a);
    if (auto b = orthonormalize(J * *a)) basis.push_back(*b);
  };
  add_pair(horizontal(m.contact, v));
  for (const Vec& h : horizontal_spanning_set(m.contact)) {
    if (static_cast<int>(basis.size()) >= target) break;
    add_pair(h);
  }
  if (static_cast<int>(basis.size()) != target)
    throw DomainError("j_adapted_basis: could not complete a J-paired basis of ker(eta)");
  return basis;
}

IdentityReport verify_structure_identities(const ContactModel& m, const ConnectionCoeffs& lc,
                                           const ConnectionCoeffs& tw,
                                           const CurvatureData& curv_lc,
                                           const CurvatureData& curv_tw, double tol,
                                           std::uint64_t seed) {
  const FrameAlgebra& alg = m.algebra;
  const ContactStructure& cs = m.contact;
  const int d = alg.dim;
  if (lc.gamma.dim() != d || tw.gamma.dim() != d || curv_lc.endo.dim() != d ||
      curv_tw.endo.dim() != d || cs.eta.size() != d)
    throw DomainError("verify_structure_identities: dimension mismatch");

  IdentityReport report;
  report.tol = tol;
  report.preconditions = algebra_checks(alg);
  if (std::all_of(report.preconditions.begin(), report.preconditions.end(),
                  [](const Check& c) { return c.passed; })) {
    auto cc = contact_checks(alg, cs);
    report.preconditions.insert(report.preconditions.end(), cc.begin(), cc.end());
  }
  report.preconditions_ok = std::all_of(report.preconditions.begin(), report.preconditions.end(),
                                        [](const Check& c) { return c.passed; });
  if (!report.preconditions_ok) return report;

  const int n = (d - 1) / 2;
  const double eps = cs.eps;
  const double e2 = eps * eps;
  const Mat& J = cs.J;
  const Vec& V = cs.reeb;

  std::mt19937_64 rng(seed);
  std::vector<Vec> ys, xs;
  for (int i = 0; i < d; ++i) ys.push_back(unit(d, i));
  xs = horizontal_spanning_set(cs);
  for (int r = 0; r < 3; ++r) {
    ys.push_back(random_vector(rng, d));
    xs.push_back(horizontal(cs, random_vector(rng, d)));
  }

  auto record = [&](std::string id, std::string formula, double residual) {
    report.identities.push_back(IdentityResult{std::move(id), std::move(formula), residual,
                                               std::isfinite(residual) && residual <= tol});
  };
  auto over_ys = [&](const std::function<Vec(const Vec&)>& f) {
    double w = 0.0;
    for (const Vec& y : ys) w = std::max(w, max_abs(f(y)));
    return w;
  };
  auto over_xs = [&](const std::function<Vec(const Vec&)>& f) {
    double w = 0.0;
    for (const Vec& x : xs) w = std::max(w, max_abs(f(x)));
    return w;
  };
  auto over_xx = [&](const std::function<Vec(const Vec&, const Vec&)>& f) {
    double w = 0.0;
    for (const Vec& a : xs)
      for (const Vec& b : xs) w = std::max(w, max_abs(f(a, b)));
    return w;
  };
  auto over_yy = [&](const std::function<Vec(const Vec&, const Vec&)>& f) {
    double w = 0.0;
    for (const Vec& a : ys)
      for (const Vec& b : ys) w = std::max(w, max_abs(f(a, b)));
    return w;
  };
  auto scalar = [](double s) { return Vec::Constant(1, s); };

  // Integrability of the weakly Sasakian structure, on all frame pairs.
  record("normality", "deta(Y1,Y2) V = -J^2[Y1,Y2] + J[JY1,Y2] + J[Y1,JY2] - [JY1,JY2]",
         over_yy([&](const Vec& a, const Vec& b) -> Vec {
           const Vec rhs = -J * (J * lie_bracket(alg, a, b)) + J * lie_bracket(alg, J * a, b) +
                           J * lie_bracket(alg, a, J * b) - lie_bracket(alg, J * a, J * b);
           return d_eta(alg, cs, a, b) * V - rhs;
         }));

  // Levi-Civita and Tanaka-Webster structural properties.
  record("lc_torsion_free", "nabla_X Y - nabla_Y X = [X,Y]", torsion_residual(alg, lc));
  record("lc_metric", "<nabla_X Y, Z> + <Y, nabla_X Z> = 0", metric_residual(alg, lc));
  record("tw_metric", "<nablabar_X Y, Z> + <Y, nablabar_X Z> = 0", metric_residual(alg, tw));
  {
    double worst = 0.0;
    for (double eps2 : {0.5 * eps, 2.0 * eps}) {
      const ContactModel scaled = rescale_eps(m, eps2);
      const ConnectionCoeffs lc2 = levi_civita(scaled.algebra);
      const ConnectionCoeffs tw2 = tanaka_webster(scaled.algebra, scaled.contact, lc2);
      worst = std::max(worst, tensor_diff(tw.gamma, tw2.gamma));
    }
    record("tw_eps_independent", "nablabar unchanged under |V| -> eps'", worst);
  }

  // Reeb field and J under the Levi-Civita connection.
  record("eta_from_metric", "eta(Y) = <V,Y>/eps^2",
         over_ys([&](const Vec& y) { return scalar(cs.eta.dot(y) - inner(alg, V, y) / e2); }));
  record("reeb_preserves_J", "L_V J = 0",
         over_ys([&](const Vec& y) -> Vec { return lie_bracket(alg, V, J * y) - J * lie_bracket(alg, V, y); }));
  record("reeb_killing", "L_V g = 0", over_yy([&](const Vec& a, const Vec& b) {
           return scalar(-inner(alg, lie_bracket(alg, V, a), b) - inner(alg, a, lie_bracket(alg, V, b)));
         }));
  record("reeb_derivative", "nabla_Y V = -(eps^2/2) J Y",
         over_ys([&](const Vec& y) -> Vec { return covariant(lc, y, V) + 0.5 * e2 * (J * y); }));
  record("nabla_J_horizontal", "(nabla_X1 J) X2 = <X1,X2>/2 V",
         over_xx([&](const Vec& a, const Vec& b) -> Vec {
           return nabla_J(lc, J, a, b) - 0.5 * inner(alg, a, b) * V;
         }));
  record("nabla_J_reeb", "(nabla_X J) V = -(eps^2/2) X",
         over_xs([&](const Vec& x) -> Vec { return nabla_J(lc, J, x, V) + 0.5 * e2 * x; }));
  record("nabla_V_J", "nabla_V J = 0",
         over_ys([&](const Vec& y) -> Vec { return nabla_J(lc, J, V, y); }));
  {
    double worst = 0.0;
    for (double eps2 : {0.5 * eps, 2.0 * eps}) {
      const ContactModel scaled = rescale_eps(m, eps2);
      const ConnectionCoeffs lc2 = levi_civita(scaled.algebra);
      worst = std::max(worst, over_xx([&](const Vec& a, const Vec& b) -> Vec {
        return horizontal(cs, covariant(lc, a, b)) - horizontal(cs, covariant(lc2, a, b));
      }));
    }
    record("horizontal_connection_eps_independent", "(nabla_X1 X2)_H independent of eps", worst);
  }
  record("horizontal_connection_split", "nabla_X1 X2 = (nabla_X1 X2)_H + <JX1,X2>/2 V",
         over_xx([&](const Vec& a, const Vec& b) -> Vec {
           const Vec nab = covariant(lc, a, b);
           return nab - horizontal(cs, nab) - 0.5 * inner(alg, J * a, b) * V;
         }));
  record("reeb_direction_derivative", "nabla_V X = [V,X]_H - (eps^2/2) J X",
         over_xs([&](const Vec& x) -> Vec {
           return covariant(lc, V, x) - horizontal(cs, lie_bracket(alg, V, x)) + 0.5 * e2 * (J * x);
         }));

  // General weakly Sasakian identities (constant |V|).
  record("reeb_derivative_antisymmetric", "<nabla_X1 V, X2> = -<nabla_X2 V, X1>",
         over_xx([&](const Vec& a, const Vec& b) {
           return scalar(inner(alg, covariant(lc, a, V), b) + inner(alg, covariant(lc, b, V), a));
         }));
  record("reeb_geodesic", "nabla_V V = 0 (constant |V|)",
         max_abs(covariant(lc, V, V)));
  record("deta_from_nabla_eta", "<X1,JX2> = (nabla_X1 eta)(X2) - (nabla_X2 eta)(X1)",
         over_xx([&](const Vec& a, const Vec& b) {
           const double rhs = -cs.eta.dot(covariant(lc, a, b)) + cs.eta.dot(covariant(lc, b, a));
           return scalar(inner(alg, a, J * b) - rhs);
         }));
  record("nabla_J_via_reeb", "(nabla_X1 J) X2 = <X2, J nabla_X1 V>/|V|^2 V",
         over_xx([&](const Vec& a, const Vec& b) -> Vec {
           return nabla_J(lc, J, a, b) - inner(alg, b, J * covariant(lc, a, V)) / e2 * V;
         }));
  record("nabla_J_on_reeb", "(nabla_X J) V = -J nabla_X V",
         over_xs([&](const Vec& x) -> Vec { return nabla_J(lc, J, x, V) + J * covariant(lc, x, V); }));
  record("nabla_V_J_on_horizontal", "(nabla_V J) X = nabla_JX V - J nabla_X V",
         over_xs([&](const Vec& x) -> Vec {
           return nabla_J(lc, J, V, x) - covariant(lc, J * x, V) + J * covariant(lc, x, V);
         }));
  record("nabla_V_J_on_reeb", "(nabla_V J) V = 0 (constant |V|)", max_abs(nabla_J(lc, J, V, V)));

  // Curvature symmetries.
  {
    double anti_lc = 0.0, anti_tw = 0.0, skew_lc = 0.0, pair_lc = 0.0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l) {
            anti_lc = std::max(anti_lc, std::abs(curv_lc.riem(i, j, k, l) + curv_lc.riem(j, i, k, l)));
            anti_tw = std::max(anti_tw, std::abs(curv_tw.riem(i, j, k, l) + curv_tw.riem(j, i, k, l)));
            skew_lc = std::max(skew_lc, std::abs(curv_lc.riem(i, j, k, l) + curv_lc.riem(i, j, l, k)));
            pair_lc = std::max(pair_lc, std::abs(curv_lc.riem(i, j, k, l) - curv_lc.riem(k, l, i, j)));
          }
    record("lc_curvature_antisymmetry", "R_ijkl = -R_jikl", anti_lc);
    record("tw_curvature_antisymmetry", "Rbar_ijkl = -Rbar_jikl", anti_tw);
    record("lc_curvature_skew", "R_ijkl = -R_ijlk", skew_lc);
    record("lc_curvature_pair_symmetry", "R_ijkl = R_klij", pair_lc);
  }

  // Levi-Civita versus Tanaka-Webster curvature.
  record("curvature_on_reeb",
         "Rm(Y1,Y2)V = eps^2<Y2,V>/4 (Y1)_H - eps^2<Y1,V>/4 (Y2)_H",
         over_yy([&](const Vec& a, const Vec& b) -> Vec {
           return curvature_apply(curv_lc, a, b, V) -
                  e2 * inner(alg, b, V) / 4.0 * horizontal(cs, a) +
                  e2 * inner(alg, a, V) / 4.0 * horizontal(cs, b);
         }));
  {
    double worst = 0.0;
    for (const Vec& x2 : xs)
      for (const Vec& x3 : xs)
        for (const Vec& x1 : xs) {
          const Vec rhs = curvature_apply(curv_lc, x2, x3, x1) +
                          e2 * inner(alg, J * x3, x1) / 4.0 * (J * x2) -
                          e2 * inner(alg, J * x2, x1) / 4.0 * (J * x3) -
                          e2 * inner(alg, J * x2, x3) / 2.0 * (J * x1);
          worst = std::max(worst, max_abs(curvature_apply(curv_tw, x2, x3, x1) - rhs));
        }
    record("tw_horizontal_curvature",
           "Rbar(X2,X3)X1 = Rm(X2,X3)X1 + eps^2<JX3,X1>/4 JX2 - eps^2<JX2,X1>/4 JX3 - eps^2<JX2,X3>/2 JX1",
           worst);
  }
  record("tw_curvature_on_reeb", "Rbar(Y1,Y2)V = 0",
         over_yy([&](const Vec& a, const Vec& b) { return curvature_apply(curv_tw, a, b, V); }));
  record("tw_mixed_curvature", "Rbar(X1,V)X2 = Rm(X1,V)X2 + eps^2/4 <X1,X2> V",
         over_xx([&](const Vec& a, const Vec& b) -> Vec {
           return curvature_apply(curv_tw, a, V, b) - curvature_apply(curv_lc, a, V, b) -
                  e2 / 4.0 * inner(alg, a, b) * V;
         }));
  record("tw_mixed_curvature_horizontal", "(Rbar(X1,V)X2)_H = 0",
         over_xx([&](const Vec& a, const Vec& b) -> Vec {
           return horizontal(cs, curvature_apply(curv_tw, a, V, b));
         }));

  // Adapted-frame components of Rm(., Y)Y and the Ricci trace.
  {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    RicciFormulaComparison ric;
    bool have_unit = false;
    for (const Vec& y : ys) {
      const Vec yh = horizontal(cs, y);
      const double yh_norm = norm(alg, yh);
      if (yh_norm < 1e-8) continue;
      const double yv = inner(alg, y, V);
      const auto v = adapted_frame_for(m, y);
      auto comp = [&](const CurvatureData& c, int i, int j) {
        return inner(alg, curvature_apply(c, v[i], y, y), v[j]);
      };
      for (int i = 1; i <= 2 * n; ++i)
        r1 = std::max(r1, std::abs(comp(curv_lc, i, 0) + (i == 1 ? eps * yv * yh_norm / 4.0 : 0.0)));
      r2 = std::max(r2, std::abs(comp(curv_lc, 0, 0) - e2 / 4.0 * yh_norm * yh_norm));
      for (int i = 1; i <= 2 * n; ++i)
        for (int j = 1; j <= 2 * n; ++j) {
          const double expected = (i == j ? yv * yv / 4.0 : 0.0) -
                                  (i == 2 && j == 2 ? 3.0 * e2 * yh_norm * yh_norm / 4.0 : 0.0) +
                                  comp(curv_tw, i, j);
          r3 = std::max(r3, std::abs(comp(curv_lc, i, j) - expected));
        }
      const double computed = ricci(curv_lc, y);
      const double ric_bar = ricci(curv_tw, y);
      const double printed = n * yv * yv / 2.0 - 3.0 * e2 * yh_norm * yh_norm / 4.0 + ric_bar;
      const double direct = n * yv * yv / 2.0 - e2 * yh_norm * yh_norm / 2.0 + ric_bar;
      ric.printed_residual = std::max(ric.printed_residual, std::abs(computed - printed));
      ric.direct_trace_residual = std::max(ric.direct_trace_residual, std::abs(computed - direct));
      if (!have_unit && std::abs(yv) < 1e-14 * std::max(1.0, yh_norm)) {
        const Vec u = yh / yh_norm;
        const double rb = ricci(curv_tw, u);
        ric.computed_unit_horizontal = ricci(curv_lc, u);
        ric.printed_unit_horizontal = -3.0 * e2 / 4.0 + rb;
        ric.direct_trace_unit_horizontal = -e2 / 2.0 + rb;
        have_unit = true;
      }
    }
    if (!have_unit) {
      const Vec u = xs.front() / norm(alg, xs.front());
      const double rb = ricci(curv_tw, u);
      ric.computed_unit_horizontal = ricci(curv_lc, u);
      ric.printed_unit_horizontal = -3.0 * e2 / 4.0 + rb;
      ric.direct_trace_unit_horizontal = -e2 / 2.0 + rb;
    }
    ric.discrepancy = ric.printed_residual > tol;
    record("adapted_vertical_row", "<Rm(v_i,Y)Y,v_0> = -eps<Y,V>|Y_H|/4 delta_i1", r1);
    record("adapted_vertical_sectional", "<Rm(v_0,Y)Y,v_0> = eps^2 |Y_H|^2/4", r2);
    record("adapted_horizontal_block",
           "<Rm(v_i,Y)Y,v_j> = <Y,V>^2/4 delta_ij - 3eps^2 |Y_H|^2/4 delta_i2 delta_j2 + <Rbar(v_i,Y)Y,v_j>",
           r3);
    report.ricci = ric;
  }
  return report;
}

IdentityReport verify_structure_identities(const ModelGeometry& g, double tol, std::uint64_t seed) {
  return verify_structure_identities(g.model, g.lc, g.tw, g.curv_lc, g.curv_tw, tol, seed);
}

HypothesisValues hypothesis_quantities(const ContactModel& m, const CurvatureData& curv_tw,
                                       const Vec& v) {
  const auto basis = j_adapted_basis(m, v);
  const Vec& u = basis[0];
  const Vec& ju = basis[1];
  HypothesisValues out;
  out.reeb_plane = inner(m.algebra, curvature_apply(curv_tw, ju, u, u), ju);
  for (std::size_t i = 2; i < basis.size(); ++i)
    out.complement += inner(m.algebra, curvature_apply(curv_tw, basis[i], u, u), basis[i]);
  return out;
}

HypothesisReport check_main_hypotheses(const ContactModel& m, const CurvatureData& curv_tw,
                                       int samples, std::uint64_t seed, double tol) {
  if (samples < 1) throw DomainError("check_main_hypotheses: samples must be >= 1");
  const int d = m.algebra.dim;
  if (curv_tw.endo.dim() != d) throw DomainError("check_main_hypotheses: dimension mismatch");
  const int n = (d - 1) / 2;
  HypothesisReport rep;
  rep.samples = samples;
  rep.seed = seed;
  rep.tol = tol;
  rep.complement_vacuous = n == 1;
  std::mt19937_64 rng(seed);
  double min1 = std::numeric_limits<double>::infinity();
  double min2 = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    Vec v = horizontal(m.contact, random_vector(rng, d));
    const double nv = norm(m.algebra, v);
    if (nv < 1e-12) {
      --s;
      continue;
    }
    const HypothesisValues q = hypothesis_quantities(m, curv_tw, v / nv);
    min1 = std::min(min1, q.reeb_plane);
    min2 = std::min(min2, q.complement);
  }
  rep.min_reeb_plane = min1;
  if (!rep.complement_vacuous) rep.min_complement = min2;
  rep.holds = min1 >= -tol && (rep.complement_vacuous || min2 >= -tol);
  return rep;
}

}  // namespace mcplab::geometry
