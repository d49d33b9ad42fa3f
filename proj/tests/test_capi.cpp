#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <json.hpp>
#include <algorithm>
#include <numbers>
#include <sstream>
#include <string>

#include "mcplab/mcplab.h"

using nlohmann::json;

namespace {

std::string read(const std::string& name) {
  std::ifstream in(std::string(MCPLAB_TEST_DATA) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct ReportHolder {
  mcplab_report* r = nullptr;
  ~ReportHolder() { mcplab_report_destroy(r); }
  json data() const { return json::parse(mcplab_report_json(r)); }
};

struct ModelHolder {
  mcplab_model* m = nullptr;
  ~ModelHolder() { mcplab_model_destroy(m); }
};

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(std::strlen(mcplab_version()) > 0);
  for (auto s : {MCPLAB_OK, MCPLAB_ERR_INVALID_ARGUMENT, MCPLAB_ERR_MODEL, MCPLAB_ERR_SINGULAR, MCPLAB_ERR_REGIME,
                 MCPLAB_ERR_DEGENERATE, MCPLAB_ERR_INTEGRATION, MCPLAB_ERR_NULL, MCPLAB_ERR_INTERNAL})
    CHECK(std::strlen(mcplab_status_string(s)) > 0);
}

TEST_CASE("range parsing") {
  mcplab_range r{};
  REQUIRE(mcplab_parse_range("0:4:20", &r) == MCPLAB_OK);
  CHECK(r.lo == 0.0);
  CHECK(r.hi == 4.0);
  CHECK(r.count == 20);
  REQUIRE(mcplab_parse_range("0.25", &r) == MCPLAB_OK);
  CHECK(r.count == 1);
  CHECK(r.lo == 0.25);
  CHECK(mcplab_parse_range("1:2", &r) == MCPLAB_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(mcplab_last_error()) > 0);
  CHECK(mcplab_parse_range("nan", &r) == MCPLAB_ERR_INVALID_ARGUMENT);
  CHECK(mcplab_parse_range(nullptr, &r) == MCPLAB_ERR_NULL);
  CHECK(mcplab_parse_range("1", nullptr) == MCPLAB_ERR_NULL);
}

TEST_CASE("model handles") {
  ModelHolder h;
  REQUIRE(mcplab_model_heisenberg(2, 0.5, &h.m) == MCPLAB_OK);
  CHECK(mcplab_model_dim(h.m) == 5);
  CHECK(mcplab_model_dim(nullptr) == 0);
  mcplab_model* bad = nullptr;
  CHECK(mcplab_model_heisenberg(0, 1.0, &bad) == MCPLAB_ERR_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(mcplab_model_heisenberg(1, 0.0, &bad) == MCPLAB_ERR_INVALID_ARGUMENT);
  CHECK(mcplab_model_heisenberg(1, 1.0, nullptr) == MCPLAB_ERR_NULL);
  mcplab_model_destroy(nullptr);

  ModelHolder j;
  REQUIRE(mcplab_model_from_json(read("heisenberg_n1_eps2.json").c_str(), &j.m) == MCPLAB_OK);
  CHECK(mcplab_model_dim(j.m) == 3);
  CHECK(mcplab_model_from_json(read("not_jacobi.json").c_str(), &bad) == MCPLAB_ERR_MODEL);
  CHECK(std::string(mcplab_last_error()).find("jacobi") != std::string::npos);
  CHECK(mcplab_model_from_json("{not json", &bad) == MCPLAB_ERR_MODEL);
  CHECK(bad == nullptr);
}

TEST_CASE("curvature report") {
  ModelHolder h;
  REQUIRE(mcplab_model_heisenberg(1, 2.0, &h.m) == MCPLAB_OK);
  ReportHolder rep;
  REQUIRE(mcplab_verify_curvature(h.m, 1e-12, 20, 1, &rep.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(rep.r) == 1);
  CHECK(std::string(mcplab_report_command(rep.r)) == "curvature");
  CHECK(mcplab_report_csv(rep.r) == nullptr);
  const json d = rep.data();
  CHECK(d["passed"] == true);
  CHECK(d["tw_curvature_max_abs"].get<double>() <= 1e-12);
  CHECK(d.contains("config"));
  // Accessor returns the same cached string.
  CHECK(mcplab_report_json(rep.r) == mcplab_report_json(rep.r));

  ModelHolder flat;
  REQUIRE(mcplab_model_from_json(read("abelian_flat_eta.json").c_str(), &flat.m) == MCPLAB_OK);
  ReportHolder r2;
  REQUIRE(mcplab_verify_curvature(flat.m, 1e-12, 20, 1, &r2.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(r2.r) == 0);
  CHECK(r2.data()["preconditions_ok"] == false);

  CHECK(mcplab_verify_curvature(nullptr, 1e-12, 20, 1, &r2.r) == MCPLAB_ERR_NULL);
}

TEST_CASE("riccati and conjugate reports") {
  mcplab_range t{0.1, 0.9, 9};
  ReportHolder rep;
  REQUIRE(mcplab_riccati_compare(1.0, 1.0, 2, t, 1e-6, &rep.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(rep.r) == 1);
  CHECK(rep.data()["max_rel_error"].get<double>() < 1e-6);
  const std::string csv = mcplab_report_csv(rep.r);
  CHECK(csv.rfind("t,trF1,trF3,bound5,boundF3\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);

  mcplab_report* bad = nullptr;
  CHECK(mcplab_riccati_compare(1.0, 1.0, 0, t, 1e-6, &bad) == MCPLAB_ERR_INVALID_ARGUMENT);

  ReportHolder conj;
  REQUIRE(mcplab_conjugate_report(0.0, 3.5, 1, &conj.r) == MCPLAB_OK);
  CHECK(conj.data()["conjugate_time"].get<double>() == doctest::Approx(std::numbers::pi / 3.5).epsilon(1e-12));
  CHECK(conj.data()["vertical_velocity"].get<double>() == 7.0);
  ReportHolder none;
  REQUIRE(mcplab_conjugate_report(1.0, 1.0, 1, &none.r) == MCPLAB_OK);
  CHECK(none.data()["conjugate_time"].is_null());
}

TEST_CASE("scalar queries") {
  int found = -1;
  double ts = 0;
  REQUIRE(mcplab_conjugate_time(0.0, 3.5, &found, &ts) == MCPLAB_OK);
  CHECK(found == 1);
  CHECK(ts == doctest::Approx(0.897597901026).epsilon(1e-11));
  REQUIRE(mcplab_conjugate_time(2.0, 1.0, &found, &ts) == MCPLAB_OK);
  CHECK(found == 0);
  CHECK(mcplab_conjugate_time(2.0, 1.0, nullptr, &ts) == MCPLAB_ERR_NULL);

  double d = 0;
  REQUIRE(mcplab_density(0.0, std::numbers::pi / 2, 1, 0.5, &d) == MCPLAB_OK);
  CHECK(d == doctest::Approx(0.25));
  CHECK(mcplab_density(0.0, 4.0, 1, 0.5, &d) == MCPLAB_ERR_REGIME);
  CHECK(mcplab_density(0.0, 1.0, 1, 1.5, &d) == MCPLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("scan, sharpness and profile") {
  ReportHolder scan;
  REQUIRE(mcplab_mcp_scan(1, {0, 4, 9}, {-3, 3, 9}, {0.1, 0.9, 9}, 1e-9, 1, &scan.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(scan.r) == 1);
  CHECK(scan.data()["violation_count"] == 0);
  const std::string csv = mcplab_report_csv(scan.r);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9 * 9 * 9 + 1);
  mcplab_report* bad = nullptr;
  CHECK(mcplab_mcp_scan(1, {0, 4, 9}, {-4, 3, 9}, {0.1, 0.9, 9}, 1e-9, 1, &bad) == MCPLAB_ERR_INVALID_ARGUMENT);

  ReportHolder sharp;
  REQUIRE(mcplab_sharpness(1, {0.5, 0.5, 1}, 1e-9, 1, &sharp.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(sharp.r) == 1);

  ReportHolder prof;
  REQUIRE(mcplab_density_profile(1.0, 0.5, 1, {0, 0.9, 10}, 1e-9, &prof.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(prof.r) == 1);
  CHECK(std::string(mcplab_report_csv(prof.r)).rfind("b,c,t,density,bound,ratio\n", 0) == 0);
}

TEST_CASE("contract") {
  auto opts = mcplab_mc_default_options();
  CHECK(opts.samples == 100000);
  opts.samples = 2000;
  opts.bootstrap = 50;
  opts.quadrature_nodes = 40;
  opts.threads = 1;
  mcplab_velocity_set set{MCPLAB_SET_BALL, 1.0, 0, 0};
  ReportHolder rep;
  REQUIRE(mcplab_contract(1, 1.0, nullptr, &set, 0.5, &opts, &rep.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(rep.r) == 1);
  const json d = rep.data();
  CHECK(d["ratio"].get<double>() >= d["bound_with_margin"].get<double>());
  CHECK(d["accepted"] == 2000);

  ReportHolder again;
  REQUIRE(mcplab_contract(1, 1.0, nullptr, &set, 0.5, &opts, &again.r) == MCPLAB_OK);
  CHECK(std::string(mcplab_report_json(rep.r)) == mcplab_report_json(again.r));

  mcplab_report* bad = nullptr;
  CHECK(mcplab_contract(1, 1.0, nullptr, nullptr, 0.5, &opts, &bad) == MCPLAB_ERR_NULL);
  set.radius = -1;
  CHECK(mcplab_contract(1, 1.0, nullptr, &set, 0.5, &opts, &bad) == MCPLAB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("geodesic") {
  const double vel[3] = {1.0, 0.5, 0.8};
  ReportHolder rep;
  REQUIRE(mcplab_geodesic(1, 1.0, nullptr, vel, 5.0, 1e-10, 11, &rep.r) == MCPLAB_OK);
  CHECK(mcplab_report_passed(rep.r) == 1);
  const json d = rep.data();
  CHECK(d["drift_speed"].get<double>() <= d["drift_limit"].get<double>());
  CHECK(d.contains("adapted_frame"));
  const std::string csv = mcplab_report_csv(rep.r);
  CHECK(csv.rfind("t,x1,y1,z,", 0) == 0);

  const double vertical[3] = {1.0, 0.0, 0.0};
  ReportHolder vrep;
  REQUIRE(mcplab_geodesic(1, 1.0, nullptr, vertical, 1.0, 1e-10, 3, &vrep.r) == MCPLAB_OK);
  CHECK(vrep.data()["adapted_frame"].is_null());
  mcplab_report* bad = nullptr;
  CHECK(mcplab_geodesic(1, 1.0, nullptr, nullptr, 1.0, 1e-10, 3, &bad) == MCPLAB_ERR_NULL);
}

TEST_CASE("NULL reports") {
  CHECK(mcplab_report_passed(nullptr) == 0);
  CHECK(mcplab_report_json(nullptr) == nullptr);
  CHECK(mcplab_report_csv(nullptr) == nullptr);
  CHECK(mcplab_report_command(nullptr) == nullptr);
  mcplab_report_destroy(nullptr);
}
