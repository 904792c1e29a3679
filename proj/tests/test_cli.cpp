#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "xprod/cli.hpp"
#include "xprod/errors.hpp"

namespace fs = std::filesystem;
using namespace xprod;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("xprod_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "xprod");
  return cli::run(args);
}

}  // namespace

TEST_CASE("argument helpers") {
  CHECK(cli::split_top_level("a,(1,2),b") == std::vector<std::string>{"a", "(1,2)", "b"});
  CHECK(cli::parse_radii("2..4") == std::vector<std::size_t>{2, 3, 4});
  CHECK(cli::parse_radii("1,5") == std::vector<std::size_t>{1, 5});
  const auto z = GroupSpec::integers();
  CHECK(cli::parse_set(z, "0..2").size() == 3);
  CHECK(cli::parse_set(GroupSpec::free(2), "ball:2").size() == 17);
  CHECK(cli::parse_set(GroupSpec::lattice(2), "(0,0),(1,0)").size() == 2);
  CHECK_THROWS(cli::parse_set(z, "3..1"));
}

TEST_CASE("exit codes") {
  const auto dir = fresh_dir("codes").string();
  CHECK(run({"--version"}) == cli::kPass);
  CHECK(run({"--out", dir}) == cli::kConfigError);
  CHECK(run({"--out", dir, "--group", "Q7", "balls"}) == cli::kConfigError);
  CHECK(run({"--out", dir, "--group", "F2", "--cap", "100", "balls", "--radius", "6"}) == cli::kResourceCap);
  CHECK(run({"--out", dir, "--group", "C3", "sigma", "--algebra", "diag", "--dim", "2", "--action", "swap"}) ==
        cli::kConfigError);
  CHECK(run({"--out", dir, "--group", "C4", "sigma", "--xi", "delta"}) == cli::kConfigError);
  CHECK(run({"--out", dir, "--group", "Z", "chi", "--set", "0..2", "--at", "1"}) == cli::kPass);
}

TEST_CASE("chi writes CSV and JSON") {
  const auto dir = fresh_dir("chi");
  REQUIRE(run({"--out", dir.string(), "--group", "Z", "chi", "--set", "0..2", "--at", "1"}) == cli::kPass);
  const auto j = nlohmann::json::parse(slurp(dir / "chi.json"));
  CHECK(j["command"] == "chi");
  CHECK(j["verdict"] == "Pass");
  const auto csv = slurp(dir / "chi.csv");
  CHECK(csv.find("2/3") != std::string::npos);
  CHECK(csv.find("\r\n") != std::string::npos);
}

TEST_CASE("freecount reproduces the table") {
  const auto dir = fresh_dir("freecount");
  REQUIRE(run({"--out", dir.string(), "freecount", "--k", "2", "--lmax", "1", "--nmax", "4"}) == cli::kPass);
  const auto csv = slurp(dir / "freecount.csv");
  CHECK(csv.find("2,1,2,8,8") != std::string::npos);
}

TEST_CASE("outputs are byte-identical for the same seed") {
  const std::vector<std::vector<std::string>> commands{
      {"--group", "C4", "--seed", "7", "sigma", "--algebra", "diag", "--dim", "2", "--action", "swap", "--trials", "5"},
      {"--group", "C5", "--seed", "7", "pi", "--xi", "weights:0=1,1=2,2=3,3=4,4=5", "--trials", "5"},
      {"cesaro", "--nmax", "12"},
      {"--group", "Z^2", "folner", "--t", "(1,0)", "--radii", "1..4"},
  };
  int i = 0;
  for (const auto& cmd : commands) {
    const auto a = fresh_dir("det_a" + std::to_string(i));
    const auto b = fresh_dir("det_b" + std::to_string(i));
    auto ca = cmd;
    ca.insert(ca.begin(), {"--out", a.string()});
    auto cb = cmd;
    cb.insert(cb.begin(), {"--out", b.string()});
    REQUIRE(run(ca) == cli::kPass);
    REQUIRE(run(cb) == cli::kPass);
    for (const auto& entry : fs::directory_iterator(a)) {
      const auto other = b / entry.path().filename();
      REQUIRE(fs::exists(other));
      CHECK(slurp(entry.path()) == slurp(other));
    }
    ++i;
  }
}

TEST_CASE("config files supply defaults that flags override") {
  const auto dir = fresh_dir("config");
  const auto ini = dir / "run.ini";
  std::ofstream(ini) << "group=C4\nseed=3\n[folner]\nradii=1..2\n";
  REQUIRE(run({"--config", ini.string(), "--out", dir.string(), "--group", "Z", "folner"}) == cli::kPass);
  const auto j = nlohmann::json::parse(slurp(dir / "folner.json"));
  CHECK(j["seed"] == 3);
  CHECK(j["group"] == "Z");
  CHECK(j["rows"].size() == 2);
}

TEST_CASE("dotted config keys address subcommand options") {
  const auto dir = fresh_dir("dotted");
  const auto ini = dir / "run.ini";
  std::ofstream(ini) << "group=C4\nsigma.trials=3\n";
  REQUIRE(run({"--config", ini.string(), "--out", dir.string(), "sigma"}) == cli::kPass);
  CHECK(slurp(dir / "sigma.json").find("\"trials\": 3") != std::string::npos);
}
