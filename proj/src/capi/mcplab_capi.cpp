#include "mcplab/mcplab.h"

#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "mcplab/errors.hpp"
#include "mcplab/model_io.hpp"
#include "mcplab/report.hpp"

struct mcplab_model {
  mcplab::geometry::ContactModel model;
  std::string source;
};

struct mcplab_report {
  mcplab::report::Report report;
  std::optional<std::string> json;
  std::optional<std::string> csv;
};

namespace {

thread_local std::string g_last_error;

mcplab_status fail(mcplab_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class Fn>
mcplab_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return MCPLAB_OK;
  } catch (const mcplab::DomainError& e) {
    return fail(MCPLAB_ERR_INVALID_ARGUMENT, e.what());
  } catch (const mcplab::ModelError& e) {
    return fail(MCPLAB_ERR_MODEL, e.what());
  } catch (const mcplab::SingularityError& e) {
    return fail(MCPLAB_ERR_SINGULAR, e.what());
  } catch (const mcplab::RegimeError& e) {
    return fail(MCPLAB_ERR_REGIME, e.what());
  } catch (const mcplab::DegenerateDirectionError& e) {
    return fail(MCPLAB_ERR_DEGENERATE, e.what());
  } catch (const mcplab::IntegrationError& e) {
    return fail(MCPLAB_ERR_INTEGRATION, e.what());
  } catch (const std::bad_alloc&) {
    return fail(MCPLAB_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MCPLAB_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(MCPLAB_ERR_INTERNAL, "unknown error");
  }
}

mcplab::Range to_range(const mcplab_range& r) { return {r.lo, r.hi, r.count}; }

mcplab_status emit(mcplab_report** out, mcplab::report::Report rep) {
  *out = new mcplab_report{std::move(rep), std::nullopt, std::nullopt};
  return MCPLAB_OK;
}

#define MCPLAB_REQUIRE(ptr)                                          \
  do {                                                               \
    if (!(ptr)) return fail(MCPLAB_ERR_NULL, #ptr " must not be NULL"); \
  } while (0)

}  // namespace

extern "C" {

const char* mcplab_version(void) { return "0.1.0"; }

const char* mcplab_last_error(void) { return g_last_error.c_str(); }

const char* mcplab_status_string(mcplab_status status) {
  switch (status) {
    case MCPLAB_OK: return "ok";
    case MCPLAB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case MCPLAB_ERR_MODEL: return "invalid model";
    case MCPLAB_ERR_SINGULAR: return "singularity";
    case MCPLAB_ERR_REGIME: return "out of regime";
    case MCPLAB_ERR_DEGENERATE: return "degenerate direction";
    case MCPLAB_ERR_INTEGRATION: return "integration failure";
    case MCPLAB_ERR_NULL: return "null pointer";
    case MCPLAB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

mcplab_status mcplab_parse_range(const char* text, mcplab_range* out) {
  MCPLAB_REQUIRE(text);
  MCPLAB_REQUIRE(out);
  return guarded([&] {
    const mcplab::Range r = mcplab::parse_range(text);
    *out = {r.lo, r.hi, r.count};
  });
}

mcplab_mc_options mcplab_mc_default_options(void) {
  const mcplab::mcp::MonteCarloOptions d;
  return {d.samples, d.seed, d.bootstrap, d.ode_tol, d.threads, d.quadrature_nodes};
}

mcplab_status mcplab_model_heisenberg(int n, double eps, mcplab_model** out) {
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    *out = new mcplab_model{mcplab::geometry::build_heisenberg_algebra(n, eps), "heisenberg"};
  });
}

mcplab_status mcplab_model_from_json(const char* json_text, mcplab_model** out) {
  MCPLAB_REQUIRE(json_text);
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { *out = new mcplab_model{mcplab::io::parse_model(std::string(json_text)), "json"}; });
}

int mcplab_model_dim(const mcplab_model* model) { return model ? model->model.algebra.dim : 0; }

void mcplab_model_destroy(mcplab_model* model) { delete model; }

mcplab_status mcplab_verify_curvature(const mcplab_model* model, double tol, int samples,
                                      uint64_t seed, mcplab_report** out) {
  MCPLAB_REQUIRE(model);
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    mcplab::report::CurvatureConfig cfg;
    cfg.source = model->source;
    cfg.tol = tol;
    cfg.samples = samples;
    cfg.seed = seed;
    emit(out, mcplab::report::run_curvature(model->model, cfg));
  });
}

mcplab_status mcplab_riccati_compare(double b, double c, int n, mcplab_range t, double rel_tol,
                                     mcplab_report** out) {
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    mcplab::report::RiccatiConfig cfg;
    cfg.params = {b, c, n};
    cfg.t = to_range(t);
    cfg.rel_tol = rel_tol;
    emit(out, mcplab::report::run_riccati(cfg));
  });
}

mcplab_status mcplab_conjugate_report(double b, double c, int n, mcplab_report** out) {
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { emit(out, mcplab::report::run_conjugate({b, c, n})); });
}

mcplab_status mcplab_mcp_scan(int n, mcplab_range b, mcplab_range c, mcplab_range t, double tol,
                              int threads, mcplab_report** out) {
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    emit(out, mcplab::report::run_mcp_scan({n, to_range(b), to_range(c), to_range(t), tol, threads}));
  });
}

mcplab_status mcplab_sharpness(int n, mcplab_range t, double tol, int threads,
                               mcplab_report** out) {
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] { emit(out, mcplab::report::run_sharpness({n, to_range(t), tol, threads})); });
}

mcplab_status mcplab_contract(int n, double eps, const double* x0, const mcplab_velocity_set* set,
                              double t, const mcplab_mc_options* options, mcplab_report** out) {
  MCPLAB_REQUIRE(set);
  MCPLAB_REQUIRE(options);
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    mcplab::report::ContractConfig cfg;
    cfg.model = {n, eps};
    mcplab::heisenberg::require_valid(cfg.model);
    if (x0) cfg.x0 = Eigen::Map<const Eigen::VectorXd>(x0, cfg.model.dim());
    if (set->kind == MCPLAB_SET_BALL)
      cfg.set.kind = mcplab::mcp::VelocitySet::Kind::Ball;
    else if (set->kind == MCPLAB_SET_CYLINDER)
      cfg.set.kind = mcplab::mcp::VelocitySet::Kind::Cylinder;
    else
      throw mcplab::DomainError("unknown velocity set kind");
    cfg.set.radius = set->radius;
    cfg.set.max_horizontal = set->max_horizontal;
    cfg.set.max_vertical = set->max_vertical;
    cfg.t = t;
    cfg.mc.samples = options->samples;
    cfg.mc.seed = options->seed;
    cfg.mc.bootstrap = options->bootstrap;
    cfg.mc.ode_tol = options->ode_tol;
    cfg.mc.threads = options->threads;
    cfg.mc.quadrature_nodes = options->quadrature_nodes;
    emit(out, mcplab::report::run_contract(cfg));
  });
}

mcplab_status mcplab_density_profile(double b, double c, int n, mcplab_range t, double tol,
                                     mcplab_report** out) {
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    emit(out, mcplab::report::run_density_profile({{b, c, n}, to_range(t), tol}));
  });
}

mcplab_status mcplab_geodesic(int n, double eps, const double* pos, const double* vel, double T,
                              double tol, int samples, mcplab_report** out) {
  MCPLAB_REQUIRE(vel);
  MCPLAB_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    mcplab::report::GeodesicConfig cfg;
    cfg.model = {n, eps};
    mcplab::heisenberg::require_valid(cfg.model);
    const int d = cfg.model.dim();
    if (pos) cfg.pos = Eigen::Map<const Eigen::VectorXd>(pos, d);
    cfg.vel = Eigen::Map<const Eigen::VectorXd>(vel, d);
    cfg.T = T;
    cfg.tol = tol;
    cfg.samples = samples;
    emit(out, mcplab::report::run_geodesic(cfg));
  });
}

mcplab_status mcplab_conjugate_time(double b, double c, int* found, double* t_star) {
  MCPLAB_REQUIRE(found);
  MCPLAB_REQUIRE(t_star);
  return guarded([&] {
    const auto tc = mcplab::riccati::conjugate_time({b, c, 1});
    *found = tc ? 1 : 0;
    *t_star = tc ? *tc : 0.0;
  });
}

mcplab_status mcplab_density(double b, double c, int n, double t, double* out) {
  MCPLAB_REQUIRE(out);
  return guarded([&] { *out = mcplab::mcp::density({b, c, n}, t); });
}

int mcplab_report_passed(const mcplab_report* report) {
  return report && report->report.passed ? 1 : 0;
}

const char* mcplab_report_command(const mcplab_report* report) {
  return report ? report->report.command.c_str() : nullptr;
}

const char* mcplab_report_json(mcplab_report* report) {
  if (!report) return nullptr;
  if (!report->json) report->json = report->report.data.dump(2) + "\n";
  return report->json->c_str();
}

const char* mcplab_report_csv(mcplab_report* report) {
  if (!report || !report->report.csv) return nullptr;
  if (!report->csv) {
    std::ostringstream os;
    try {
      report->report.csv(os);
    } catch (const std::exception& e) {
      g_last_error = e.what();
      return nullptr;
    }
    report->csv = os.str();
  }
  return report->csv->c_str();
}

const char* mcplab_report_summary(const mcplab_report* report) {
  return report ? report->report.summary.c_str() : nullptr;
}

void mcplab_report_destroy(mcplab_report* report) { delete report; }

}  // extern "C"
