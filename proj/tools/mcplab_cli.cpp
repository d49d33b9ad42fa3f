// mcplab command-line front end. Links only the C API.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mcplab/mcplab.h"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ReportDeleter {
  void operator()(mcplab_report* r) const { mcplab_report_destroy(r); }
};
using ReportPtr = std::unique_ptr<mcplab_report, ReportDeleter>;

struct ModelDeleter {
  void operator()(mcplab_model* m) const { mcplab_model_destroy(m); }
};
using ModelPtr = std::unique_ptr<mcplab_model, ModelDeleter>;

double number(const std::string& text, const char* flag) {
  mcplab_range r;
  if (mcplab_parse_range(text.c_str(), &r) != MCPLAB_OK || r.count != 1)
    throw UsageError(std::string(flag) + ": expected a number, got '" + text + "'");
  return r.lo;
}

mcplab_range range(const std::string& text, const char* flag) {
  mcplab_range r;
  if (mcplab_parse_range(text.c_str(), &r) != MCPLAB_OK)
    throw UsageError(std::string(flag) + ": " + mcplab_last_error());
  return r;
}

std::vector<double> numbers(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    out.push_back(number(text.substr(start, comma - start), flag));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

struct Output {
  std::string path;
  int threads = 0;

  bool wants_csv() const { return ends_with(".csv"); }
  bool wants_json() const { return ends_with(".json"); }
  bool ends_with(const std::string& ext) const {
    return path.size() >= ext.size() && path.compare(path.size() - ext.size(), ext.size(), ext) == 0;
  }
  void validate(bool has_csv) const {
    if (path.empty() || wants_json()) return;
    if (wants_csv() && has_csv) return;
    if (wants_csv()) throw UsageError("--out: this subcommand has no CSV output; use .json");
    throw UsageError("--out: file extension must be .csv or .json");
  }
};

void write_file(const std::string& path, const char* text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

int finish(mcplab_status st, mcplab_report* raw, const Output& out) {
  ReportPtr rep(raw);
  if (st != MCPLAB_OK) {
    switch (st) {
      case MCPLAB_ERR_INVALID_ARGUMENT:
      case MCPLAB_ERR_REGIME:
      case MCPLAB_ERR_DEGENERATE:
      case MCPLAB_ERR_NULL:
        std::cerr << "error: " << mcplab_last_error() << '\n';
        return kExitUsage;
      default:
        std::cerr << "error (" << mcplab_status_string(st) << "): " << mcplab_last_error() << '\n';
        return kExitFail;
    }
  }
  std::cout << mcplab_report_summary(rep.get());
  const bool passed = mcplab_report_passed(rep.get()) != 0;
  if (out.wants_csv()) {
    const char* csv = mcplab_report_csv(rep.get());
    if (!csv) {
      std::cerr << "error: " << mcplab_last_error() << '\n';
      return kExitFail;
    }
    write_file(out.path, csv);
  } else if (out.wants_json()) {
    write_file(out.path, mcplab_report_json(rep.get()));
  }
  if (!passed && !out.wants_json()) std::cout << mcplab_report_json(rep.get());
  return passed ? kExitPass : kExitFail;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read model file " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void add_output(CLI::App* sub, Output& out) {
  sub->add_option("--out", out.path, "Write the report to a .json or .csv file");
  sub->add_option("--threads", out.threads, "Worker threads (default: MCPLAB_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for measure contraction on eps-Heisenberg groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", mcplab_version());
  Output out;
  std::function<int()> action;

  // curvature
  auto* curv = app.add_subcommand("curvature", "Structure identities and curvature hypotheses");
  bool heis = false;
  std::string model_path;
  int n = 1;
  std::string eps_s = "1", tol_curv_s = "1e-10";
  int samples = 100;
  std::uint64_t seed = 1;
  auto* heis_flag = curv->add_flag("--heisenberg", heis, "Use the built-in Heisenberg model");
  curv->add_option("--model", model_path, "JSON model file")->excludes(heis_flag);
  curv->add_option("--n", n, "Heisenberg dimension index")->check(CLI::PositiveNumber);
  curv->add_option("--eps", eps_s, "Reeb field length");
  curv->add_option("--tol", tol_curv_s, "Identity tolerance");
  curv->add_option("--samples", samples, "Random bases for the hypothesis check")->check(CLI::PositiveNumber);
  curv->add_option("--seed", seed, "Random seed");
  add_output(curv, out);
  curv->callback([&] {
    action = [&] {
      out.validate(false);
      mcplab_model* raw = nullptr;
      mcplab_status st;
      if (!model_path.empty()) {
        st = mcplab_model_from_json(read_file(model_path).c_str(), &raw);
        if (st == MCPLAB_ERR_MODEL) {
          std::cerr << "model rejected: " << mcplab_last_error() << '\n';
          const nlohmann::json doc = {{"command", "curvature"}, {"passed", false}, {"model_error", mcplab_last_error()}};
          if (out.wants_json())
            write_file(out.path, (doc.dump(2) + "\n").c_str());
          else
            std::cout << doc.dump(2) << '\n';
          return kExitFail;
        }
      } else {
        st = mcplab_model_heisenberg(n, number(eps_s, "--eps"), &raw);
      }
      if (st != MCPLAB_OK) return finish(st, nullptr, out);
      ModelPtr model(raw);
      mcplab_report* rep = nullptr;
      st = mcplab_verify_curvature(model.get(), number(tol_curv_s, "--tol"), samples, seed, &rep);
      return finish(st, rep, out);
    };
  });

  // riccati
  auto* ric = app.add_subcommand("riccati", "Closed-form Riccati solutions against ODE integration");
  std::string b_s = "0", c_s = "0", t_s = "0.1:0.9:9", rel_s = "1e-6";
  ric->add_option("--b", b_s, "Horizontal parameter b");
  ric->add_option("--c", c_s, "Vertical parameter c");
  ric->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  ric->add_option("--t", t_s, "t grid lo:hi:count in (0,1)");
  ric->add_option("--rel-tol", rel_s, "Relative agreement tolerance");
  add_output(ric, out);
  ric->callback([&] {
    action = [&] {
      out.validate(true);
      mcplab_report* rep = nullptr;
      const auto st = mcplab_riccati_compare(number(b_s, "--b"), number(c_s, "--c"), n,
                                             range(t_s, "--t"), number(rel_s, "--rel-tol"), &rep);
      return finish(st, rep, out);
    };
  });

  // conjugate
  auto* conj = app.add_subcommand("conjugate", "First conjugate time of a Heisenberg geodesic");
  conj->add_option("--b", b_s, "Horizontal parameter b");
  conj->add_option("--c", c_s, "Vertical parameter c");
  conj->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  add_output(conj, out);
  conj->callback([&] {
    action = [&] {
      out.validate(false);
      mcplab_report* rep = nullptr;
      const auto st = mcplab_conjugate_report(number(b_s, "--b"), number(c_s, "--c"), n, &rep);
      return finish(st, rep, out);
    };
  });

  // mcp-scan
  auto* scan = app.add_subcommand("mcp-scan", "Density against (1-t)^(2n+3) on a grid");
  std::string sb = "0:10:50", sc = "-3:3:50", st_s = "0.05:0.95:50", tol_s = "1e-9";
  scan->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  scan->add_option("--b", sb, "b grid lo:hi:count");
  scan->add_option("--c", sc, "c grid lo:hi:count inside (-pi, pi)");
  scan->add_option("--t", st_s, "t grid lo:hi:count inside [0, 1)");
  scan->add_option("--tol", tol_s, "Violation tolerance");
  add_output(scan, out);
  scan->callback([&] {
    action = [&] {
      out.validate(true);
      mcplab_report* rep = nullptr;
      const auto st = mcplab_mcp_scan(n, range(sb, "--b"), range(sc, "--c"), range(st_s, "--t"),
                                      number(tol_s, "--tol"), out.threads, &rep);
      return finish(st, rep, out);
    };
  });

  // sharpness
  auto* sharp = app.add_subcommand("sharpness", "Infimum of density/bound over (b, c)");
  std::string sharp_t = "0.5";
  sharp->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  sharp->add_option("--t", sharp_t, "t value or grid lo:hi:count in (0,1)");
  sharp->add_option("--tol", tol_s, "Tolerance on ratio >= 1");
  add_output(sharp, out);
  sharp->callback([&] {
    action = [&] {
      out.validate(false);
      mcplab_report* rep = nullptr;
      const auto st = mcplab_sharpness(n, range(sharp_t, "--t"), number(tol_s, "--tol"), out.threads, &rep);
      return finish(st, rep, out);
    };
  });

  // contract
  auto* con = app.add_subcommand("contract", "Monte Carlo contraction of a set of geodesics");
  std::string con_eps = "1", x0_s, set_kind = "ball", radius_s = "1", maxh_s = "1", maxv_s = "1",
              con_t = "0.5", ode_tol_s = "1e-9";
  mcplab_mc_options mc = mcplab_mc_default_options();
  con->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  con->add_option("--eps", con_eps, "Reeb field length");
  con->add_option("--x0", x0_s, "Base point x1,..,yn,z (default origin)");
  con->add_option("--set", set_kind, "Velocity set")->check(CLI::IsMember({"ball", "cylinder"}));
  con->add_option("--radius", radius_s, "Ball radius");
  con->add_option("--max-horizontal", maxh_s, "Cylinder bound on |w_H|");
  con->add_option("--max-vertical", maxv_s, "Cylinder bound on |<w, V>|");
  con->add_option("--t", con_t, "Contraction parameter in (0,1)");
  con->add_option("--samples", mc.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  con->add_option("--seed", mc.seed, "Random seed");
  con->add_option("--bootstrap", mc.bootstrap, "Bootstrap resamples")->check(CLI::PositiveNumber);
  con->add_option("--ode-tol", ode_tol_s, "Jacobi ODE tolerance");
  con->add_option("--quadrature", mc.quadrature_nodes, "Gauss-Legendre nodes per axis (0: skip)")
      ->check(CLI::NonNegativeNumber);
  add_output(con, out);
  con->callback([&] {
    action = [&] {
      out.validate(false);
      const double eps = number(con_eps, "--eps");
      std::vector<double> x0;
      if (!x0_s.empty()) {
        x0 = numbers(x0_s, "--x0");
        if (static_cast<int>(x0.size()) != 2 * n + 1) throw UsageError("--x0 needs 2n+1 coordinates");
      }
      mcplab_velocity_set set{set_kind == "ball" ? MCPLAB_SET_BALL : MCPLAB_SET_CYLINDER,
                              number(radius_s, "--radius"), number(maxh_s, "--max-horizontal"),
                              number(maxv_s, "--max-vertical")};
      mc.ode_tol = number(ode_tol_s, "--ode-tol");
      mc.threads = out.threads;
      mcplab_report* rep = nullptr;
      const auto st = mcplab_contract(n, eps, x0.empty() ? nullptr : x0.data(), &set,
                                      number(con_t, "--t"), &mc, &rep);
      return finish(st, rep, out);
    };
  });

  // density-profile
  auto* prof = app.add_subcommand("density-profile", "Density, bound and ratio along t");
  std::string prof_t = "0:0.95:20";
  prof->add_option("--b", b_s, "Horizontal parameter b");
  prof->add_option("--c", c_s, "Vertical parameter c");
  prof->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  prof->add_option("--t", prof_t, "t grid lo:hi:count inside [0,1)");
  prof->add_option("--tol", tol_s, "Tolerance on ratio >= 1");
  add_output(prof, out);
  prof->callback([&] {
    action = [&] {
      out.validate(true);
      mcplab_report* rep = nullptr;
      const auto st = mcplab_density_profile(number(b_s, "--b"), number(c_s, "--c"), n,
                                             range(prof_t, "--t"), number(tol_s, "--tol"), &rep);
      return finish(st, rep, out);
    };
  });

  // geodesic
  auto* geo = app.add_subcommand("geodesic", "Integrate a geodesic and export the trajectory");
  std::string geo_eps = "1", pos_s, vel_s, T_s = "1", geo_tol = "1e-10";
  int geo_samples = 101;
  geo->add_option("--n", n, "Dimension index")->check(CLI::PositiveNumber);
  geo->add_option("--eps", geo_eps, "Reeb field length");
  geo->add_option("--pos", pos_s, "Start x1,..,yn,z (default origin)");
  geo->add_option("--vel", vel_s, "Frame velocity u0,..,u2n")->required();
  geo->add_option("--T", T_s, "Final time (may be negative)");
  geo->add_option("--tol", geo_tol, "Integrator tolerance");
  geo->add_option("--samples", geo_samples, "CSV rows")->check(CLI::Range(2, 1000000));
  add_output(geo, out);
  geo->callback([&] {
    action = [&] {
      out.validate(true);
      const int d = 2 * n + 1;
      std::vector<double> pos;
      if (!pos_s.empty()) {
        pos = numbers(pos_s, "--pos");
        if (static_cast<int>(pos.size()) != d) throw UsageError("--pos needs 2n+1 coordinates");
      }
      const std::vector<double> vel = numbers(vel_s, "--vel");
      if (static_cast<int>(vel.size()) != d) throw UsageError("--vel needs 2n+1 components");
      mcplab_report* rep = nullptr;
      const auto st = mcplab_geodesic(n, number(geo_eps, "--eps"), pos.empty() ? nullptr : pos.data(),
                                      vel.data(), number(T_s, "--T"), number(geo_tol, "--tol"),
                                      geo_samples, &rep);
      return finish(st, rep, out);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  try {
    return action();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
}
