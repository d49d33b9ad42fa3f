#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using nlohmann::json;

namespace {

const std::string kCli = MCPLAB_CLI;
const std::string kDir = MCPLAB_TEST_DIR;
const std::string kData = MCPLAB_DATA_DIR;

std::string path(const std::string& name) { return kDir + "/cli_" + name; }

std::string slurp(const std::string& file) {
  std::ifstream in(file, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string stdout_file = path("stdout.txt");
  const std::string cmd = kCli + " " + args + " > " + stdout_file + " 2> " + path("stderr.txt");
  const int raw = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(raw));
  return {WEXITSTATUS(raw), slurp(stdout_file)};
}

json load(const std::string& file) { return json::parse(slurp(file)); }

}  // namespace

TEST_CASE("curvature") {
  CHECK(run("curvature --heisenberg --n 1 --eps 2").code == 0);
  REQUIRE(run("curvature --heisenberg --n 2 --eps 0.5 --out " + path("curv.json")).code == 0);
  const json d = load(path("curv.json"));
  CHECK(d["command"] == "curvature");
  CHECK(d["passed"] == true);
  CHECK(d["config"].is_object());

  CHECK(run("curvature --model " + kData + "/heisenberg_n1_eps2.json").code == 0);
  const Run bad = run("curvature --model " + kData + "/not_jacobi.json");
  CHECK(bad.code == 1);
  const json err = json::parse(bad.out);
  CHECK(err["passed"] == false);
  CHECK(err["model_error"].get<std::string>().find("jacobi") != std::string::npos);

  const Run flat = run("curvature --model " + kData + "/abelian_flat_eta.json");
  CHECK(flat.code == 1);
  CHECK(flat.out.find("\"preconditions_ok\": false") != std::string::npos);

  CHECK(run("curvature --model " + kData + "/missing.json").code == 2);
  CHECK(run("curvature --heisenberg --out " + path("curv.csv")).code == 2);
}

TEST_CASE("riccati") {
  REQUIRE(run("riccati --b 1 --c 1 --n 2 --out " + path("ric.csv")).code == 0);
  const std::string csv = slurp(path("ric.csv"));
  CHECK(csv.rfind("t,trF1,trF3,bound5,boundF3\n", 0) == 0);
  CHECK(run("riccati --b 4 --c -2.99 --n 3 --t 0.05:0.95:19").code == 0);
  CHECK(run("riccati --b 1 --c 1 --n 0").code == 2);
  CHECK(run("riccati --b one --c 1").code == 2);
}

TEST_CASE("conjugate") {
  REQUIRE(run("conjugate --b 0 --c 3.5 --out " + path("conj.json")).code == 0);
  const json d = load(path("conj.json"));
  CHECK(d["conjugate_time"].get<double>() == doctest::Approx(0.897597901026).epsilon(1e-11));
  CHECK(d["vertical_velocity"].get<double>() == 7.0);
  CHECK(d["c_in_regime"] == false);
  REQUIRE(run("conjugate --b 1 --c 1 --out " + path("conj2.json")).code == 0);
  CHECK(load(path("conj2.json"))["conjugate_time"].is_null());
}

TEST_CASE("mcp-scan output is byte-identical across thread counts") {
  const std::string grid = "mcp-scan --n 2 --b 0:10:12 --c -3:3:11 --t 0.05:0.95:7";
  REQUIRE(run(grid + " --threads 1 --out " + path("scan1.csv")).code == 0);
  REQUIRE(run(grid + " --threads 3 --out " + path("scan3.csv")).code == 0);
  CHECK(slurp(path("scan1.csv")) == slurp(path("scan3.csv")));
  REQUIRE(run(grid + " --out " + path("scan.json")).code == 0);
  CHECK(load(path("scan.json"))["violation_count"] == 0);
  CHECK(run("mcp-scan --n 1 --b 0:1:3 --c -3.2:3:5 --t 0.1:0.5:3").code == 2);
  CHECK(run("mcp-scan --n 1 --b 0:1:3 --c -3:3:5 --t 0.1:1:3").code == 2);
}

TEST_CASE("sharpness and density profile") {
  CHECK(run("sharpness --n 1 --t 0.5").code == 0);
  REQUIRE(run("density-profile --b 1 --c 0.5 --n 1 --t 0:0.9:10 --out " + path("prof.csv")).code == 0);
  CHECK(slurp(path("prof.csv")).rfind("b,c,t,density,bound,ratio\n", 0) == 0);
  CHECK(run("density-profile --b 1 --c 4 --n 1").code == 2);
}

TEST_CASE("contract is reproducible") {
  const std::string args = "contract --n 1 --radius 1 --t 0.5 --samples 2000 --bootstrap 50 --seed 7";
  REQUIRE(run(args + " --threads 1 --out " + path("mc1.json")).code == 0);
  REQUIRE(run(args + " --threads 2 --out " + path("mc2.json")).code == 0);
  CHECK(slurp(path("mc1.json")) == slurp(path("mc2.json")));
  const json d = load(path("mc1.json"));
  CHECK(d["bound_holds"] == true);
  CHECK(run("contract --n 1 --set cylinder --max-horizontal 2 --max-vertical 5 --t 0.3 --samples 2000 "
            "--bootstrap 50 --quadrature 40")
            .code == 0);
  CHECK(run("contract --n 1 --set sphere").code == 2);
  CHECK(run("contract --n 1 --radius -1 --samples 2000").code == 2);
}

TEST_CASE("geodesic") {
  REQUIRE(run("geodesic --n 1 --vel 0.5,1,0 --T 4 --samples 9 --out " + path("geo.csv")).code == 0);
  const std::string csv = slurp(path("geo.csv"));
  CHECK(csv.rfind("t,x1,y1,z,u0,u1,u2\n", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 10);
  CHECK(run("geodesic --n 1 --vel 0.5,1 --T 4").code == 2);
  CHECK(run("geodesic --n 1 --T 4").code == 2);
  CHECK(run("geodesic --n 1 --vel 0.5,1,0 --out " + path("geo.txt")).code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("curvature --heisenberg --eps abc").code == 2);
  CHECK(run("--help").code == 0);
}
