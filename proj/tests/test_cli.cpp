#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "stablemix/config.hpp"
#include "stablemix/util.hpp"

using namespace stablemix;
namespace fs = std::filesystem;

namespace {

const std::string kMinimal1d =
    "dimension = 1\n"
    "box.halfwidth = 2.0\n"
    "grid.points = 129\n"
    "operator.s = 0.5\n"
    "measure.kind = atomic\n"
    "measure.atom = +1, 1.0\n"
    "measure.atom = -1, 1.0\n"
    "f.kind = one\n";

std::string bin_path() { return std::string(STABLEMIX_BIN_DIR) + "/stablemix"; }

fs::path fresh_dir(const std::string& tag) {
  const fs::path d = fs::temp_directory_path() / ("stablemix_test_" + tag);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args, const fs::path& dir) {
  const std::string cmd =
      bin_path() + " " + args + " > " + (dir / "stdout.txt").string() + " 2> " +
      (dir / "stderr.txt").string();
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("minimal config fills documented defaults") {
  const RunConfig cfg = parse_config_text(kMinimal1d, "");
  CHECK(cfg.dimension == 1);
  CHECK(cfg.omega_kind == "interval");
  CHECK(cfg.omega_a == -1.0);
  CHECK(cfg.omega_b == 1.0);
  CHECK(cfg.inner_cut_cells == 4);
  CHECK(cfg.measure_set);
  CHECK(cfg.measure.total_mass == doctest::Approx(2.0));
  const std::string canon = canonical_config(cfg);
  CHECK(canon.find("operator.s = 0.5") != std::string::npos);
  CHECK(canon.find("coef.kind = constant") != std::string::npos);
}

TEST_CASE("config rejects out-of-range and unknown keys with line numbers") {
  CHECK_THROWS_WITH_AS(parse_config_text("operator.s = 1.5\n", ""),
                       doctest::Contains("s must lie in (0,1)"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("bogus.key = 1\n", ""),
                       doctest::Contains("unknown key"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("dimension = 1\n", ""),
                       doctest::Contains("measure required"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config_text("coef.alpha = 0\n", ""),
                       doctest::Contains("alpha must lie in (0,1)"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(
      parse_config_text("lambda = -1\nmeasure.kind = uniform\n", ""),
      doctest::Contains("nonnegative"), ConfigError);
}

TEST_CASE("measure file reference is honored") {
  const fs::path dir = fresh_dir("measurefile");
  std::ofstream(dir / "m.measure") << "kind = uniform\nscale = 1.5\n";
  std::ofstream(dir / "run.cfg") << "dimension = 1\nmeasure.file = m.measure\n";
  const RunConfig cfg = parse_config((dir / "run.cfg").string());
  CHECK(cfg.measure.total_mass == doctest::Approx(3.0));
}

TEST_CASE("cli solve run: outputs, report, exit code") {
  const fs::path dir = fresh_dir("solve");
  std::ofstream(dir / "run.cfg") << kMinimal1d;
  const int rc = run_cli("solve --config " + (dir / "run.cfg").string() +
                             " --out " + (dir / "out").string(),
                         dir);
  CHECK(rc == 0);
  CHECK(fs::exists(dir / "out" / "solution.csv"));
  CHECK(fs::exists(dir / "out" / "report.json"));
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(j["record"]["checks"]["residual"].get<bool>());
  CHECK(j.contains("config"));
}

TEST_CASE("identical runs are bit-identical") {
  const fs::path dir = fresh_dir("determinism");
  std::ofstream(dir / "run.cfg") << kMinimal1d << "seed = 77\n";
  REQUIRE(run_cli("solve --config " + (dir / "run.cfg").string() + " --out " +
                      (dir / "a").string(),
                  dir) == 0);
  REQUIRE(run_cli("solve --config " + (dir / "run.cfg").string() + " --out " +
                      (dir / "b").string(),
                  dir) == 0);
  CHECK(slurp(dir / "a" / "solution.csv") == slurp(dir / "b" / "solution.csv"));
  const auto ja = nlohmann::json::parse(slurp(dir / "a" / "report.json"));
  const auto jb = nlohmann::json::parse(slurp(dir / "b" / "report.json"));
  CHECK(ja["results"] == jb["results"]);
  CHECK(ja["record"]["config_hash"] == jb["record"]["config_hash"]);
  CHECK(ja["record"]["content_hash"] == jb["record"]["content_hash"]);
}

TEST_CASE("usage errors exit with code 2") {
  const fs::path dir = fresh_dir("usage");
  std::ofstream(dir / "bad.cfg") << "operator.s = 1.5\n";
  CHECK(run_cli("solve --config " + (dir / "bad.cfg").string(), dir) == 2);
  CHECK(slurp(dir / "stderr.txt").find("s must lie in (0,1)") !=
        std::string::npos);
  std::ofstream(dir / "nomeasure.cfg") << "dimension = 1\n";
  CHECK(run_cli("solve --config " + (dir / "nomeasure.cfg").string(), dir) ==
        2);
  CHECK(run_cli("solve", dir) == 2);  // missing --config
}

TEST_CASE("cli symbol and barrier subcommands") {
  const fs::path dir = fresh_dir("symbols");
  std::ofstream(dir / "run.cfg") << kMinimal1d;
  CHECK(run_cli("symbol --config " + (dir / "run.cfg").string() + " --out " +
                    (dir / "sy").string(),
                dir) == 0);
  CHECK(fs::exists(dir / "sy" / "symbol.csv"));

  std::ofstream(dir / "bar.cfg") << "dimension = 1\n"
                                    "box.halfwidth = 1.0\n"
                                    "grid.points = 129\n"
                                    "omega.a = 0.3\n"
                                    "omega.b = 0.7\n"
                                    "operator.s = 0.5\n"
                                    "measure.kind = uniform\n";
  CHECK(run_cli("barrier --config " + (dir / "bar.cfg").string() + " --out " +
                    (dir / "bar").string(),
                dir) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "bar" / "report.json"));
  CHECK(j["results"]["max_generator_defect"].get<double>() <= 1.0);
}

TEST_CASE("gnuplot flag emits scripts") {
  const fs::path dir = fresh_dir("gnuplot");
  std::ofstream(dir / "run.cfg") << kMinimal1d;
  CHECK(run_cli("solve --config " + (dir / "run.cfg").string() + " --out " +
                    (dir / "out").string() + " --gnuplot",
                dir) == 0);
  CHECK(fs::exists(dir / "out" / "solution.csv.gp"));
}

TEST_CASE("cli maxprin smoke run") {
  const fs::path dir = fresh_dir("maxprin");
  std::ofstream(dir / "run.cfg") << "dimension = 2\n"
                                    "box.halfwidth = 1.2\n"
                                    "grid.points = 33\n"
                                    "omega.radius = 1.0\n"
                                    "operator.s = 0.5\n"
                                    "measure.kind = atomic\n"
                                    "measure.atom = 0, 1.0\n"
                                    "measure.atom = 90, 1.0\n"
                                    "measure.atom = 180, 1.0\n"
                                    "measure.atom = 270, 1.0\n"
                                    "trials = 3\n";
  CHECK(run_cli("maxprin-check --config " + (dir / "run.cfg").string() +
                    " --out " + (dir / "out").string(),
                dir) == 0);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "report.json"));
  CHECK(j["results"]["trials"].size() == 3);
}
