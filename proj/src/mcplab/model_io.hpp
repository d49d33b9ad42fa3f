#pragma once

// JSON model files:
//   {"dim": d, "bracket": [[i, j, k, value], ...], "metric": [[...]],
//    "J": [[...]], "eta": [...], "reeb": [...], "eps": e}
// Bracket entries are sparse c^k_ij with zero-based indices; a missing
// (j, i, k) partner is filled in by antisymmetry. "metric" defaults to the
// identity.

#include <json.hpp>
#include <string>

#include "mcplab/frame_algebra.hpp"

namespace mcplab::io {

/// Throws ModelError ("json", "shape", or the failing algebra check).
/// Contact-structure checks are left to the caller.
geometry::ContactModel parse_model(const nlohmann::json& j);
geometry::ContactModel parse_model(const std::string& text);

nlohmann::json to_json(const geometry::ContactModel& model);

}  // namespace mcplab::io
