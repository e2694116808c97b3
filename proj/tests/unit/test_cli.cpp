#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "pauligap/cli/commands.hpp"
#include "pauligap/cli/output.hpp"
#include "pauligap/error.hpp"

using namespace pauligap;
using namespace pauligap::cli;
namespace fs = std::filesystem;

namespace {

const char* kMinimal = R"(
[dispersion]
kind = "dirac"

[potential]
shape = "square"
amplitudes = [0, 0, 1]

[run]
alpha = 0.1
beta = 0.2
cutoff = 8
n_k = 32
)";

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("pauligap_unit_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(kMinimal);
  CHECK(c.kind == "dirac");
  CHECK(c.alphas == std::vector<double>{0.1});
  CHECK(c.cutoff == 8);
  CHECK(c.n_k == 32);
  CHECK(c.amplitudes == Vec3(0, 0, 1));

  CHECK_THROWS_WITH_AS(parse_config("[run]\nalpha = 0.6\n"), "alpha must lie in (0, 0.5]", Error);
  CHECK_THROWS_AS(parse_config("[run]\nbeta = -1\n"), Error);
  CHECK_THROWS_WITH_AS(parse_config("[run]\ncutof = 3\n"), "config: unknown key 'run.cutof' (line 2)", Error);
  CHECK_THROWS_WITH_AS(parse_config("[run]\ncutoff = 2.5\n"), "config: run.cutoff must be an integer", Error);
  CHECK_THROWS_WITH_AS(parse_config("[dispersion]\nkind = \"graphene\"\n"),
                       "config: dispersion.kind unknown preset 'graphene'", Error);
  CHECK_THROWS_AS(parse_config("[potential]\nshape = \"disk\"\nradius = 0.7\n"), Error);

  const RunConfig l = parse_config("[run]\nalpha = [0.05, 0.1]  # list\nbeta = []\n");
  CHECK(l.alphas.size() == 2);
  CHECK(l.betas.empty());

  // The echo covers every field and round-trips through the parser's view.
  const Json e = c.echo();
  CHECK(e["run"]["alpha"][0].get<double>() == 0.1);
  CHECK(e.contains("kernel"));
}

TEST_CASE("float formatting") {
  CHECK(fmt(0.1) == "1.0000000000000001e-01");
  CHECK(fmt(-2.0) == "-2.0000000000000000e+00");
  CHECK(dump_json(Json{{"x", 0.5}, {"n", 3}}) == "{\n  \"x\": 5.0000000000000000e-01,\n  \"n\": 3\n}\n");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("sweep with empty alpha list") {
  RunConfig c = parse_config("[run]\nalpha = []\nbeta = [0.2]\ncutoff = 2\nn_k = 4\n");
  c.out_dir = scratch("sweep").string();
  std::ostringstream log;
  CHECK(run_command("sweep", c, Json::object(), log) == 0);
  CHECK(slurp(fs::path(c.out_dir) / "sweep.csv") == "alpha,beta,N,n_k,width,ratio,runtime_s\n");
}

TEST_CASE("gap command and manifest") {
  RunConfig c = parse_config(std::string(kMinimal) + "cutoff = 3\nn_k = 6\n");
  c.out_dir = scratch("gap").string();
  std::ostringstream log;
  REQUIRE(run_command("gap", c, Json::object(), log) == 0);
  const Json g = Json::parse(slurp(fs::path(c.out_dir) / "gap.json"));
  CHECK(g["schema_version"] == 1);
  CHECK(g["report"]["width"].get<double>() > 0.0);
  CHECK(g["report"].contains("ratio"));

  const Json m = Json::parse(slurp(fs::path(c.out_dir) / "manifest.json"));
  CHECK(m["partial"] == false);
  CHECK(m["config"]["run"]["cutoff"] == 3);
  for (const auto& f : m["files"])
    CHECK(sha256_hex(slurp(fs::path(c.out_dir) / f["name"].get<std::string>())) == f["sha256"].get<std::string>());
}

TEST_CASE("failing command flags the manifest") {
  RunConfig c = parse_config("[run]\nbeta = 0.2\ncutoff = 2\nn_k = 4\ncenter = 1e6\n");
  c.out_dir = scratch("fail").string();
  std::ostringstream log;
  CHECK(run_command("gap", c, Json::object(), log) == 1);
  const Json m = Json::parse(slurp(fs::path(c.out_dir) / "manifest.json"));
  CHECK(m["status"] == 1);
  CHECK(m["error"].get<std::string>() == "center energy outside the computed spectral window");
}

TEST_CASE("verify in the free case") {
  RunConfig c = parse_config("[run]\nbeta = 0\n[verify]\ncutoff = 2\nn_k = 4\n");
  const Json v = verify_suite(c);
  CHECK(v["summary"]["failed"] == 0);
  CHECK(v["gap_width"].get<double>() <= 1e-12);
}
