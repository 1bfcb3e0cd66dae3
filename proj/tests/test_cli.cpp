#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sphsplit/cli.hpp"

using namespace sphsplit;

namespace {
struct Run {
  int code;
  std::string out, err;
};
Run cli(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}
std::string slurp(const std::string& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}
std::filesystem::path tmpdir() {
  auto p = std::filesystem::temp_directory_path() / "sphere_split_cli_test";
  std::filesystem::create_directories(p);
  return p;
}
}  // namespace

TEST_CASE("grid and dimension parsing") {
  auto g = parse_grid("0:1:0.25");
  REQUIRE(g.size() == 5);
  CHECK(g.back() == doctest::Approx(1));
  CHECK(parse_grid("0.1, 0.2,0.3").size() == 3);
  CHECK_THROWS(parse_grid("0:1"));
  CHECK(parse_dims("2..20").size() == 19);
  CHECK(parse_dims("3") == std::vector<int>{3});
  CHECK_THROWS(parse_dims("1"));
}

TEST_CASE("simulate is deterministic") {
  auto dir = tmpdir();
  std::string a = (dir / "a").string(), b = (dir / "b").string();
  CHECK(cli({"simulate", "--model", "split", "--d", "2", "--t", "3", "--seed", "7", "--out", a}).code == 0);
  CHECK(cli({"simulate", "--model", "split", "--d", "2", "--t", "3", "--seed", "7", "--out", b}).code == 0);
  CHECK(slurp(a + ".events.csv") == slurp(b + ".events.csv"));
  CHECK(slurp(a + ".snapshot.json") == slurp(b + ".snapshot.json"));
  CHECK(!slurp(a + ".events.csv").empty());
}

TEST_CASE("simulate at t = 0 has one cell") {
  auto p = (tmpdir() / "zero").string();
  REQUIRE(cli({"simulate", "--t", "0", "--seed", "1", "--out", p}).code == 0);
  auto j = nlohmann::json::parse(slurp(p + ".snapshot.json"));
  CHECK(j["cells"].size() == 1);
}

TEST_CASE("simulate the Poisson model") {
  auto p = (tmpdir() / "poisson").string();
  REQUIRE(cli({"simulate", "--model", "poisson", "--d", "2", "--t", "3", "--seed", "2", "--out", p}).code == 0);
  auto j = nlohmann::json::parse(slurp(p + ".snapshot.json"));
  CHECK(j["normals"].is_array());
  CHECK(!slurp(p + ".normals.csv").empty());
}

TEST_CASE("seed from the environment") {
  setenv("SPHERE_SPLIT_SEED", "7", 1);
  auto env = cli({"simulate", "--t", "2"});
  unsetenv("SPHERE_SPLIT_SEED");
  auto flag = cli({"simulate", "--t", "2", "--seed", "7"});
  CHECK(env.out == flag.out);
}

TEST_CASE("analytic formulas") {
  auto r = cli({"analytic", "--formula", "mean_segment_length", "--d", "2", "--t", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("1.89438") != std::string::npos);
  auto pcf = cli({"analytic", "--formula", "pcf", "--t", "2", "--r", "0.5,1.5707963267948966"});
  REQUIRE(pcf.code == 0);
  CHECK(pcf.out.rfind("# sphere-split v", 0) == 0);
  CHECK(pcf.out.find("r,K_split,g_split,K_poisson,g_poisson") != std::string::npos);
  auto var = cli({"analytic", "--formula", "var_surface", "--d", "2..20", "--t", "1"});
  REQUIRE(var.code == 0);
  CHECK(var.out.find("125.133") != std::string::npos);
}

TEST_CASE("configuration errors exit with 2") {
  auto unknown = cli({"analytic", "--formula", "mean_segment_lenght"});
  CHECK(unknown.code == 2);
  CHECK(unknown.err.find("mean_segment_length") != std::string::npos);
  CHECK(cli({"simulate", "--model", "voronoi"}).code == 2);
  CHECK(cli({"simulate", "--t", "-1"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  auto cfg = (tmpdir() / "bad.cfg").string();
  std::ofstream(cfg) << "no_such_key = 3\n";
  CHECK(cli({"analytic", "--config", cfg, "--formula", "n1_split"}).code == 2);
}

TEST_CASE("config file with command-line precedence") {
  auto cfg = (tmpdir() / "good.cfg").string();
  std::ofstream(cfg) << "# defaults\nformula = n1_split\nt = 5\nd = 2\n";
  auto from_file = cli({"analytic", "--config", cfg});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.find("\n2,5,") != std::string::npos);
  auto overridden = cli({"analytic", "--config", cfg, "--t", "3"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("\n2,3,") != std::string::npos);
}

TEST_CASE("verify") {
  auto list = cli({"verify", "--list"});
  CHECK(list.code == 0);
  CHECK(list.out.find("14.") != std::string::npos);
  // A zero z threshold cannot be met by any Monte Carlo gate.
  auto tampered = cli({"verify", "--scale", "quick", "--criteria", "2", "--threshold", "0"});
  CHECK(tampered.code == 1);
  CHECK(tampered.out.find("FAIL") != std::string::npos);
  auto ok = cli({"verify", "--scale", "quick", "--criteria", "10"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);
}

TEST_CASE("several realizations from one command") {
  auto dir = tmpdir();
  std::string many = (dir / "many").string(), one = (dir / "one").string();
  REQUIRE(cli({"simulate", "--t", "2", "--seed", "3", "--n", "3", "--out", many}).code == 0);
  REQUIRE(cli({"simulate", "--t", "2", "--seed", "3", "--out", one}).code == 0);
  CHECK(std::filesystem::exists(many + ".2.events.csv"));
  CHECK(slurp(many + ".0.events.csv") == slurp(one + ".events.csv"));
}
