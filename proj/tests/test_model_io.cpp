#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mcplab/errors.hpp"
#include "mcplab/identities.hpp"
#include "mcplab/model_io.hpp"

using namespace mcplab;

namespace {

std::string check_of(const std::string& text) {
  try {
    io::parse_model(text);
  } catch (const ModelError& e) {
    return e.check();
  }
  return "";
}

}  // namespace

TEST_CASE("sparse bracket with implied antisymmetric partner") {
  const auto m = io::parse_model(std::string(R"({
    "dim": 3, "bracket": [[1, 2, 0, 2.0]],
    "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [0.5,0,0], "reeb": [2,0,0], "eps": 2})"));
  const auto ref = geometry::build_heisenberg_algebra(1, 2.0);
  CHECK(m.algebra.bracket.data() == ref.algebra.bracket.data());
  CHECK(m.algebra.metric == ref.algebra.metric);
  CHECK(m.contact.J == ref.contact.J);
  CHECK(m.contact.eta == ref.contact.eta);
  CHECK(m.contact.reeb == ref.contact.reeb);
  CHECK(m.contact.eps == 2.0);
  CHECK_NOTHROW(geometry::require_valid(m));
}

TEST_CASE("serialization round trip") {
  for (int n : {1, 2}) {
    const auto ref = geometry::build_heisenberg_algebra(n, 0.5);
    const auto back = io::parse_model(io::to_json(ref).dump());
    CHECK(back.algebra.bracket.data() == ref.algebra.bracket.data());
    CHECK(back.contact.J == ref.contact.J);
    CHECK(back.contact.reeb == ref.contact.reeb);
  }
  const auto berger = geometry::build_berger_algebra(0.3, 1.7);
  const auto back = io::parse_model(io::to_json(berger).dump());
  CHECK(geometry::verify_structure_identities(geometry::compute_geometry(back)).passed());
}

TEST_CASE("malformed models are rejected with a named check") {
  CHECK(check_of("{not json") == "json");
  CHECK(check_of("[1,2]") == "json");
  CHECK(check_of(R"({"bracket": []})") == "shape");
  CHECK(check_of(R"({"dim": 3, "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [1,0], "reeb": [1,0,0], "eps": 1})") == "shape");
  CHECK(check_of(R"({"dim": 3, "bracket": [[0,5,1,1]], "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [1,0,0], "reeb": [1,0,0], "eps": 1})") == "shape");
  CHECK(check_of(R"({"dim": 3, "bracket": [[0,1,2,"x"]], "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [1,0,0], "reeb": [1,0,0], "eps": 1})") == "shape");
  CHECK(check_of(R"({"dim": 3, "bracket": [[0,1,2,1],[0,1,2,1]], "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [1,0,0], "reeb": [1,0,0], "eps": 1})") == "shape");
  CHECK(check_of(R"({"dim": 3, "bracket": [[0,1,2,1],[1,0,2,1]], "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [1,0,0], "reeb": [1,0,0], "eps": 1})") == "bracket_antisymmetry");
  CHECK(check_of(R"({"dim": 3, "metric": [[1,0,0],[0,-1,0],[0,0,1]], "J": [[0,0,0],[0,0,-1],[0,1,0]], "eta": [1,0,0], "reeb": [1,0,0], "eps": 1})") == "metric_positive_definite");
}

TEST_CASE("shipped example files") {
  auto read = [](const std::string& name) {
    std::ifstream f(std::string(MCPLAB_TEST_DATA) + "/" + name);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  };
  CHECK_NOTHROW(io::parse_model(read("heisenberg_n1_eps2.json")));
  CHECK(check_of(read("not_jacobi.json")) == "jacobi_identity");
  const auto flat = io::parse_model(read("abelian_flat_eta.json"));
  CHECK_FALSE(geometry::verify_structure_identities(geometry::compute_geometry(flat)).preconditions_ok);
}
