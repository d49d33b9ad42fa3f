#pragma once

// Numerical verification of the weakly Sasakian structure identities on a
// left-invariant model. Every identity is evaluated on frame vectors (or
// their horizontal projections) and on a few seeded random vectors; the
// residual is the largest absolute frame component of the difference.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mcplab/frame_algebra.hpp"

namespace mcplab::geometry {

struct IdentityResult {
  std::string id;
  std::string formula;
  double residual = 0.0;
  bool passed = false;
};

/// The Ricci trace for horizontal-plus-vertical Y evaluated three ways: the
/// computed trace, the closed formula with a -3 eps^2 |Y_H|^2 / 4 term, and
/// the sum of the adapted-frame components (which carries -eps^2 |Y_H|^2 / 2).
/// Reported side by side; not part of pass/fail.
struct RicciFormulaComparison {
  double computed_unit_horizontal = 0.0;  // ric(Y,Y) at a unit horizontal Y
  double printed_unit_horizontal = 0.0;
  double direct_trace_unit_horizontal = 0.0;
  double printed_residual = 0.0;       // max over test vectors
  double direct_trace_residual = 0.0;  // max over test vectors
  bool discrepancy = false;            // printed formula disagrees with the trace
};

struct IdentityReport {
  double tol = 1e-10;
  std::vector<Check> preconditions;
  bool preconditions_ok = false;
  std::vector<IdentityResult> identities;
  std::optional<RicciFormulaComparison> ricci;

  bool passed() const;
  double max_residual() const;
};

struct ModelGeometry {
  ContactModel model;
  ConnectionCoeffs lc;
  ConnectionCoeffs tw;
  CurvatureData curv_lc;
  CurvatureData curv_tw;
};

/// Connections and curvatures of a model, no validation.
ModelGeometry compute_geometry(const ContactModel& model);

IdentityReport verify_structure_identities(const ContactModel& model, const ConnectionCoeffs& lc,
                                           const ConnectionCoeffs& tw,
                                           const CurvatureData& curv_lc,
                                           const CurvatureData& curv_tw, double tol = 1e-10,
                                           std::uint64_t seed = 20240601);

IdentityReport verify_structure_identities(const ModelGeometry& geom, double tol = 1e-10,
                                           std::uint64_t seed = 20240601);

/// Orthonormal basis {v, Jv, w_1, Jw_1, ...} of ker(eta), given unit horizontal v.
std::vector<Vec> j_adapted_basis(const ContactModel& model, const Vec& v);

struct HypothesisValues {
  double reeb_plane = 0.0;  // <Rbar(Jv,v)v, Jv>
  double complement = 0.0;  // sum_i <Rbar(w_i,v)v, w_i>
};

HypothesisValues hypothesis_quantities(const ContactModel& model, const CurvatureData& curv_tw,
                                       const Vec& v);

struct HypothesisReport {
  int samples = 0;
  std::uint64_t seed = 0;
  double tol = 0.0;
  double min_reeb_plane = 0.0;
  std::optional<double> min_complement;  // empty when n = 1 (vacuous)
  bool complement_vacuous = false;
  bool holds = false;
};

/// Samples random unit v in ker(eta) and completes J-paired orthonormal bases.
HypothesisReport check_main_hypotheses(const ContactModel& model, const CurvatureData& curv_tw,
                                       int samples, std::uint64_t seed, double tol = 1e-10);

}  // namespace mcplab::geometry
