#pragma once

// Runs one verification suite end to end and packages the result as JSON
// (with the resolved configuration embedded), an optional CSV table and a
// short human summary.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <json.hpp>
#include <optional>
#include <string>

#include "mcplab/frame_algebra.hpp"
#include "mcplab/heisenberg.hpp"
#include "mcplab/mcp.hpp"
#include "mcplab/range.hpp"

namespace mcplab::report {

struct Report {
  std::string command;
  bool passed = false;
  nlohmann::json data;
  std::string summary;
  std::function<void(std::ostream&)> csv;  // empty when there is no table
};

struct CurvatureConfig {
  std::string source = "heisenberg";  // or "json"
  double tol = 1e-10;
  int samples = 100;
  std::uint64_t seed = 1;
};
Report run_curvature(const geometry::ContactModel& model, const CurvatureConfig& cfg);

struct RiccatiConfig {
  riccati::Params params;
  Range t{0.1, 0.9, 9};
  double rel_tol = 1e-6;
  double ode_tol = 1e-12;
};
Report run_riccati(const RiccatiConfig& cfg);

Report run_conjugate(const riccati::Params& p);

struct ScanConfig {
  int n = 1;
  Range b{0.0, 10.0, 50};
  Range c{-3.0, 3.0, 50};
  Range t{0.05, 0.95, 50};
  double tol = 1e-9;
  int threads = 0;
};
Report run_mcp_scan(const ScanConfig& cfg);

struct SharpnessConfig {
  int n = 1;
  Range t{0.5, 0.5, 1};
  double tol = 1e-9;
  int threads = 0;
};
Report run_sharpness(const SharpnessConfig& cfg);

struct ContractConfig {
  heisenberg::HeisenbergModel model;
  Eigen::VectorXd x0;  // empty means the origin
  mcp::VelocitySet set;
  double t = 0.5;
  mcp::MonteCarloOptions mc;
};
Report run_contract(const ContractConfig& cfg);

struct ProfileConfig {
  riccati::Params params;
  Range t{0.0, 0.95, 20};
  double tol = 1e-9;
};
Report run_density_profile(const ProfileConfig& cfg);

struct GeodesicConfig {
  heisenberg::HeisenbergModel model;
  Eigen::VectorXd pos;  // empty means the origin
  Eigen::VectorXd vel;
  double T = 1.0;
  double tol = 1e-10;
  int samples = 101;
};
Report run_geodesic(const GeodesicConfig& cfg);

}  // namespace mcplab::report
