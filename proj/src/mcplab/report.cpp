#include "mcplab/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>

#include "mcplab/errors.hpp"
#include "mcplab/identities.hpp"
#include "mcplab/model_io.hpp"

namespace mcplab::report {
namespace {

using nlohmann::json;

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Range& r) { return {{"lo", r.lo}, {"hi", r.hi}, {"count", r.count}}; }

json to_json(const riccati::Params& p) { return {{"b", p.b}, {"c", p.c}, {"n", p.n}}; }

json to_json(const mcp::GridPoint& g) {
  return {{"b", g.b}, {"c", g.c}, {"t", g.t}, {"ratio", num(g.ratio)}};
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

json mat_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (int r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r).transpose()));
  return rows;
}

std::string fmt(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

double max_abs(const Eigen::MatrixXd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace

Report run_curvature(const geometry::ContactModel& model, const CurvatureConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw DomainError("curvature: tol must be positive");
  if (cfg.samples < 1) throw DomainError("curvature: samples must be >= 1");
  const geometry::ModelGeometry geom = geometry::compute_geometry(model);
  const geometry::IdentityReport ids = geometry::verify_structure_identities(geom, cfg.tol, cfg.seed);

  Report rep;
  rep.command = "curvature";
  json& d = rep.data;
  d["command"] = rep.command;
  d["config"] = {{"source", cfg.source}, {"model", io::to_json(model)}, {"tol", cfg.tol},
                 {"samples", cfg.samples}, {"seed", cfg.seed}};
  json pre = json::array();
  for (const auto& c : ids.preconditions)
    pre.push_back({{"name", c.name}, {"residual", num(c.residual)}, {"passed", c.passed}});
  d["preconditions"] = pre;
  d["preconditions_ok"] = ids.preconditions_ok;
  json idj = json::array();
  for (const auto& r : ids.identities)
    idj.push_back({{"id", r.id}, {"formula", r.formula}, {"residual", num(r.residual)},
                   {"passed", r.passed}});
  d["identities"] = idj;
  d["max_residual"] = num(ids.max_residual());

  double tw_max = 0.0;
  for (double x : geom.curv_tw.riem.data()) tw_max = std::max(tw_max, std::abs(x));
  d["tw_curvature_max_abs"] = tw_max;

  if (ids.ricci) {
    const auto& r = *ids.ricci;
    d["ricci_formula"] = {{"computed_unit_horizontal", num(r.computed_unit_horizontal)},
                          {"printed_unit_horizontal", num(r.printed_unit_horizontal)},
                          {"direct_trace_unit_horizontal", num(r.direct_trace_unit_horizontal)},
                          {"printed_residual", num(r.printed_residual)},
                          {"direct_trace_residual", num(r.direct_trace_residual)},
                          {"discrepancy", r.discrepancy}};
  }

  bool hyp_ok = false;
  if (ids.preconditions_ok) {
    const auto h = geometry::check_main_hypotheses(model, geom.curv_tw, cfg.samples, cfg.seed, cfg.tol);
    d["hypotheses"] = {{"samples", h.samples},
                       {"seed", h.seed},
                       {"tol", h.tol},
                       {"min_reeb_plane", num(h.min_reeb_plane)},
                       {"min_complement", h.min_complement ? num(*h.min_complement) : json(nullptr)},
                       {"complement_vacuous", h.complement_vacuous},
                       {"holds", h.holds}};
    hyp_ok = h.holds;
  } else {
    d["hypotheses"] = nullptr;
  }
  rep.passed = ids.passed() && hyp_ok;
  d["passed"] = rep.passed;

  std::ostringstream s;
  if (!ids.preconditions_ok) {
    s << "preconditions FAILED:";
    for (const auto& c : ids.preconditions)
      if (!c.passed) s << ' ' << c.name << " (residual " << fmt(c.residual, 3) << ")";
    s << '\n';
  } else {
    std::size_t ok = 0;
    for (const auto& r : ids.identities) ok += r.passed;
    s << "identities: " << ok << "/" << ids.identities.size() << " passed, max residual "
      << fmt(ids.max_residual(), 3) << " (tol " << fmt(cfg.tol, 3) << ")\n";
    for (const auto& r : ids.identities)
      if (!r.passed) s << "  FAILED " << r.id << " residual " << fmt(r.residual, 3) << '\n';
    s << "max |Rbar| = " << fmt(tw_max, 3) << '\n';
    if (ids.ricci)
      s << "ric(Y,Y) unit horizontal: computed " << fmt(ids.ricci->computed_unit_horizontal)
        << ", closed formula " << fmt(ids.ricci->printed_unit_horizontal) << ", direct trace "
        << fmt(ids.ricci->direct_trace_unit_horizontal)
        << (ids.ricci->discrepancy ? " (formula disagrees with trace)" : "") << '\n';
    s << "hypotheses " << (hyp_ok ? "hold" : "FAIL") << " on " << cfg.samples << " samples\n";
  }
  s << (rep.passed ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

Report run_riccati(const RiccatiConfig& cfg) {
  const riccati::Params& p = cfg.params;
  riccati::require_valid(p);
  const std::vector<double> ts = cfg.t.values();
  for (double t : ts)
    if (!(t > 0.0 && t < 1.0)) throw DomainError("riccati: t values must lie in (0, 1)");
  std::vector<double> grid{0.0};
  for (double t : ts) {
    if (!(t > grid.back())) throw DomainError("riccati: t values must be increasing");
    grid.push_back(t);
  }
  const riccati::BlockMatrices blocks = riccati::build_blocks(p);
  const riccati::RiccatiSolution sol = riccati::integrate_inverse_riccati(p, blocks, grid, cfg.ode_tol);
  const bool in_regime = std::abs(p.c) < std::numbers::pi;
  const int m = 2 * p.n - 2;

  Report rep;
  rep.command = "riccati";
  json& d = rep.data;
  d["command"] = rep.command;
  d["config"] = {{"params", to_json(p)}, {"t", to_json(cfg.t)}, {"rel_tol", cfg.rel_tol},
                 {"ode_tol", cfg.ode_tol}};
  d["max_abs_G2"] = sol.max_abs_G2;
  json pts = json::array();
  double worst = 0.0;
  bool bounds_ok = true;
  std::size_t compared = 0;
  struct Row {
    double t, trF1, trF3;
  };
  std::vector<Row> rows;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double t = grid[i];
    json pt = {{"t", t}, {"ode_regular", static_cast<bool>(sol.regular[i])}};
    std::optional<riccati::ClosedForm> cf;
    try {
      cf = riccati::closed_forms(p, t);
      pt["F1_closed"] = mat_json(cf->F1);
      pt["F3_scalar_closed"] = num(cf->F3_scalar);
    } catch (const SingularityError& e) {
      pt["singular_factor"] = e.factor();
    }
    double trF1 = std::numeric_limits<double>::quiet_NaN(), trF3 = trF1;
    if (sol.regular[i]) {
      pt["F1_ode"] = mat_json(sol.F1[i]);
      pt["trF3_ode"] = num(sol.trF3[i]);
      trF1 = sol.F1[i].trace();
      trF3 = sol.trF3[i];
    }
    if (cf && sol.regular[i]) {
      const double e1 = max_abs(sol.F1[i] - cf->F1) / std::max(1.0, max_abs(cf->F1));
      const double ref3 = m * cf->F3_scalar;
      const double e3 = std::abs(sol.trF3[i] - ref3) / std::max(1.0, std::abs(ref3));
      const double e = std::max(e1, e3);
      pt["rel_error"] = num(e);
      worst = std::max(worst, std::isfinite(e) ? e : std::numeric_limits<double>::infinity());
      ++compared;
    }
    if (cf) {
      trF1 = cf->F1.trace();
      trF3 = m * cf->F3_scalar;
    }
    if (in_regime) {
      const auto tb = riccati::trace_bounds(p, t);
      pt["t_trF1"] = num(t * tb.trF1);
      pt["t_trF3"] = num(t * tb.trF3);
      pt["bounds_ok"] = tb.ok;
      bounds_ok = bounds_ok && tb.ok;
    }
    if (m > 0) {
      try {
        pt["f3_tilde"] = num(riccati::f3_tilde(p, t));
      } catch (const SingularityError&) {
        pt["f3_tilde"] = nullptr;
      }
    }
    rows.push_back({t, trF1, trF3});
    pts.push_back(pt);
  }
  d["points"] = pts;
  d["compared_points"] = compared;
  d["max_rel_error"] = num(worst);
  d["in_regime"] = in_regime;
  d["bounds_ok"] = in_regime ? json(bounds_ok) : json(nullptr);
  rep.passed = worst <= cfg.rel_tol && bounds_ok;
  d["passed"] = rep.passed;

  const int n = p.n;
  rep.csv = [rows, n](std::ostream& os) {
    os << "t,trF1,trF3,bound5,boundF3\n";
    const auto old = os.precision(17);
    for (const Row& r : rows)
      os << r.t << ',' << r.trF1 << ',' << r.trF3 << ',' << -5.0 / r.t << ','
         << -(2.0 * n - 2.0) / r.t << '\n';
    os.precision(old);
  };
  std::ostringstream s;
  s << "closed form vs inverse Riccati ODE at " << compared << " points: max relative error "
    << fmt(worst, 3) << " (tol " << fmt(cfg.rel_tol, 3) << ")\n";
  if (in_regime) s << "trace bounds " << (bounds_ok ? "hold" : "VIOLATED") << '\n';
  s << (rep.passed ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

Report run_conjugate(const riccati::Params& p) {
  riccati::require_valid(p);
  const auto tc = riccati::conjugate_time(p);
  Report rep;
  rep.command = "conjugate";
  rep.passed = true;
  json& d = rep.data;
  d["command"] = rep.command;
  d["config"] = {{"params", to_json(p)}};
  d["conjugate_time"] = tc ? json(*tc) : json(nullptr);
  d["vertical_velocity"] = 2.0 * p.c;  // <gamma'(0), V>
  d["c_in_regime"] = std::abs(p.c) < std::numbers::pi;
  d["passed"] = true;
  std::ostringstream s;
  if (tc)
    s << "t* = " << fmt(*tc, 12) << '\n';
  else
    s << "no conjugate time in (0, 1]\n";
  rep.summary = s.str();
  return rep;
}

Report run_mcp_scan(const ScanConfig& cfg) {
  const mcp::ScanReport sr = mcp::mcp_scan(cfg.n, cfg.b, cfg.c, cfg.t, cfg.tol, cfg.threads);
  Report rep;
  rep.command = "mcp-scan";
  rep.passed = sr.passed();
  json& d = rep.data;
  d["command"] = rep.command;
  d["config"] = {{"n", cfg.n}, {"b", to_json(cfg.b)}, {"c", to_json(cfg.c)}, {"t", to_json(cfg.t)},
                 {"tol", cfg.tol}};
  d["grid"] = {{"b", to_json(cfg.b)}, {"c", to_json(cfg.c)}, {"t", to_json(cfg.t)},
               {"cells", sr.cells}};
  d["min_ratio"] = num(sr.min_ratio);
  d["argmin"] = to_json(sr.argmin);
  d["violation_count"] = sr.violation_count;
  json v = json::array();
  for (const auto& g : sr.violations) v.push_back(to_json(g));
  d["violations"] = v;
  d["passed"] = rep.passed;
  rep.csv = [cfg](std::ostream& os) {
    os << "b,c,t,density,bound,ratio\n";
    const auto old = os.precision(17);
    for (double b : cfg.b.values())
      for (double c : cfg.c.values())
        for (double t : cfg.t.values()) {
          const double den = mcp::density({b, c, cfg.n}, t), bd = mcp::mcp_bound(cfg.n, t);
          os << b << ',' << c << ',' << t << ',' << den << ',' << bd << ',' << den / bd << '\n';
        }
    os.precision(old);
  };
  std::ostringstream s;
  s << "cells " << sr.cells << ", min ratio " << fmt(sr.min_ratio, 12) << " at (b,c,t) = ("
    << fmt(sr.argmin.b, 6) << ", " << fmt(sr.argmin.c, 6) << ", " << fmt(sr.argmin.t, 6) << "), "
    << sr.violation_count << " violations\n"
    << (rep.passed ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

Report run_sharpness(const SharpnessConfig& cfg) {
  Report rep;
  rep.command = "sharpness";
  json& d = rep.data;
  d["command"] = rep.command;
  d["config"] = {{"n", cfg.n}, {"t", to_json(cfg.t)}, {"tol", cfg.tol}};
  json res = json::array();
  bool ok = true;
  std::ostringstream s;
  for (double t : cfg.t.values()) {
    const mcp::SharpnessReport sr = mcp::sharpness_scan(cfg.n, t, cfg.threads);
    const bool holds = sr.infimum >= 1.0 - cfg.tol;
    ok = ok && holds;
    res.push_back({{"t", t},
                   {"infimum", num(sr.infimum)},
                   {"argmin_b", sr.argmin_b},
                   {"argmin_c", sr.argmin_c},
                   {"b0_slice_infimum", num(sr.b0_slice_infimum)},
                   {"b0_slice_expected", std::pow(1.0 - t, -2)},
                   {"b_points", sr.b_values.size()},
                   {"c_points", sr.c_values.size()},
                   {"bound_holds", holds}});
    s << "t = " << fmt(t, 6) << ": infimum of ratio " << fmt(sr.infimum, 10) << " at b = "
      << fmt(sr.argmin_b, 6) << ", c = " << fmt(sr.argmin_c, 6) << '\n';
  }
  d["results"] = res;
  rep.passed = ok;
  d["passed"] = ok;
  s << (ok ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

Report run_contract(const ContractConfig& cfg) {
  const Eigen::VectorXd x0 =
      cfg.x0.size() ? cfg.x0 : Eigen::VectorXd::Zero(cfg.model.dim());
  const mcp::MonteCarloResult r = mcp::monte_carlo_contraction(cfg.model, x0, cfg.set, cfg.t, cfg.mc);
  Report rep;
  rep.command = "contract";
  json& d = rep.data;
  d["command"] = rep.command;
  json set;
  if (cfg.set.kind == mcp::VelocitySet::Kind::Ball)
    set = {{"kind", "ball"}, {"radius", cfg.set.radius}};
  else
    set = {{"kind", "cylinder"}, {"max_horizontal", cfg.set.max_horizontal},
           {"max_vertical", cfg.set.max_vertical}};
  d["config"] = {{"n", cfg.model.n},
                 {"eps", cfg.model.eps},
                 {"x0", vec_json(x0)},
                 {"set", set},
                 {"t", cfg.t},
                 {"samples", cfg.mc.samples},
                 {"seed", cfg.mc.seed},
                 {"bootstrap", cfg.mc.bootstrap},
                 {"ode_tol", cfg.mc.ode_tol},
                 {"quadrature_nodes", cfg.mc.quadrature_nodes}};
  d["ratio"] = num(r.ratio);
  d["std_error"] = num(r.std_error);
  d["bound"] = r.bound;
  d["bound_with_margin"] = r.bound * (1.0 - 3.0 * r.std_error);
  d["bound_holds"] = r.bound_holds;
  d["accepted"] = r.accepted;
  d["rejected"] = r.rejected;
  d["quadrature_ratio"] = r.quadrature_ratio ? num(*r.quadrature_ratio) : json(nullptr);
  d["quadrature_agrees"] = r.quadrature_agrees ? json(*r.quadrature_agrees) : json(nullptr);
  rep.passed = r.bound_holds && r.quadrature_agrees.value_or(true);
  d["passed"] = rep.passed;
  std::ostringstream s;
  s << "mu(U_t)/mu(U_0) = " << fmt(r.ratio, 8) << " +- " << fmt(r.std_error, 3) << " (bound "
    << fmt(r.bound, 8) << ", " << r.rejected << " rejected)\n";
  if (r.quadrature_ratio)
    s << "quadrature " << fmt(*r.quadrature_ratio, 8)
      << (*r.quadrature_agrees ? " agrees within 3 sigma" : " DISAGREES") << '\n';
  s << (rep.passed ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

Report run_density_profile(const ProfileConfig& cfg) {
  const mcp::DensityProfile prof = mcp::density_profile(cfg.params, cfg.t.values());
  Report rep;
  rep.command = "density-profile";
  json& d = rep.data;
  d["command"] = rep.command;
  d["config"] = {{"params", to_json(cfg.params)}, {"t", to_json(cfg.t)}, {"tol", cfg.tol}};
  double mn = std::numeric_limits<double>::infinity();
  for (double r : prof.ratio) mn = std::min(mn, r);
  json rows = json::array();
  for (std::size_t i = 0; i < prof.t.size(); ++i)
    rows.push_back({{"t", prof.t[i]}, {"density", num(prof.density[i])}, {"bound", prof.bound[i]},
                    {"ratio", num(prof.ratio[i])}});
  d["profile"] = rows;
  d["min_ratio"] = num(mn);
  if (cfg.params.c != 0.0) {
    const auto rd = mcp::density_readings(cfg.params, 0.5);
    d["display_readings_t_half"] = {{"block3", num(rd.block3)},
                                    {"block1_as_displayed", num(rd.block1_printed)},
                                    {"sum_reading", num(rd.sum_reading)},
                                    {"product", num(rd.product)}};
  }
  rep.passed = mn >= 1.0 - cfg.tol;
  d["passed"] = rep.passed;
  rep.csv = [prof](std::ostream& os) { prof.write_csv(os); };
  std::ostringstream s;
  s << prof.t.size() << " points, min density/bound " << fmt(mn, 12) << '\n'
    << (rep.passed ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

Report run_geodesic(const GeodesicConfig& cfg) {
  heisenberg::require_valid(cfg.model);
  const int d = cfg.model.dim();
  const heisenberg::GeodesicState start{cfg.pos.size() ? cfg.pos : Eigen::VectorXd::Zero(d), cfg.vel};
  const heisenberg::Trajectory traj = heisenberg::geodesic_flow(cfg.model, start, cfg.T, cfg.tol);
  const double speed0 = start.vel.norm(), u00 = start.vel(0);
  double drift_speed = 0.0, drift_u0 = 0.0;
  for (double t : traj.sample_times(std::max(cfg.samples, 1001))) {
    const auto s = traj.at(t);
    drift_speed = std::max(drift_speed, std::abs(s.vel.norm() - speed0));
    drift_u0 = std::max(drift_u0, std::abs(s.vel(0) - u00));
  }
  Report rep;
  rep.command = "geodesic";
  json& j = rep.data;
  j["command"] = rep.command;
  j["config"] = {{"n", cfg.model.n}, {"eps", cfg.model.eps}, {"pos", vec_json(start.pos)},
                 {"vel", vec_json(start.vel)}, {"T", cfg.T}, {"tol", cfg.tol},
                 {"samples", cfg.samples}};
  const auto fin = traj.at(traj.t_end());
  j["final"] = {{"pos", vec_json(fin.pos)}, {"vel", vec_json(fin.vel)}};
  j["steps"] = traj.steps();
  j["drift_speed"] = drift_speed;
  j["drift_vertical"] = drift_u0;
  const double limit = 100.0 * cfg.tol * std::max(1.0, speed0 * speed0);
  j["drift_limit"] = limit;
  if (start.vel.tail(2 * cfg.model.n).norm() > 0.0) {
    const auto af = heisenberg::adapted_frame(cfg.model, traj);
    j["adapted_frame"] = {{"b", af.b}, {"c", af.c}, {"W", mat_json(af.W)},
                          {"residual", af.residual}, {"orthonormality", af.orthonormality}};
  } else {
    j["adapted_frame"] = nullptr;
  }
  rep.passed = drift_speed <= limit && drift_u0 <= limit;
  j["passed"] = rep.passed;
  const int samples = cfg.samples;
  rep.csv = [traj, samples](std::ostream& os) { traj.write_csv(os, samples); };
  std::ostringstream s;
  s << "geodesic over [0, " << fmt(cfg.T, 6) << "]: " << traj.steps() << " steps, drift |u| "
    << fmt(drift_speed, 3) << ", drift u0 " << fmt(drift_u0, 3) << '\n'
    << (rep.passed ? "PASS" : "FAIL") << '\n';
  rep.summary = s.str();
  return rep;
}

}  // namespace mcplab::report
