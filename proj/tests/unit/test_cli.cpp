#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbm/errors.hpp"
#include "bbmlab/commands.hpp"
#include "bbmlab/config.hpp"
#include "bbmlab/csv.hpp"
#include "bbmlab/manifest.hpp"
#include "bbmlab/validation.hpp"

using namespace bbm;
using namespace bbm::app;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bbmlab_test_" + name);
  fs::remove_all(p);
  return p;
}

ExperimentConfig small_config(const fs::path& out) {
  ExperimentConfig c;
  c.run.out = out.string();
  c.run.trials = 2000;
  c.grid = {-4.0, 4.0, 41};
  c.pde.spacing = 0.05;
  c.pde.mollification = 0.1;
  c.hierarchy.residual_spacings = {0.4, 0.2};
  c.hierarchy.residual_half_width = 4.0;
  c.hierarchy.mass_terms = 10;
  c.hierarchy.mass_substeps = 200;
  return c;
}

nlohmann::json last_json_line(const std::string& text) {
  std::istringstream in(text);
  std::string line, last;
  while (std::getline(in, line))
    if (!line.empty()) last = line;
  return nlohmann::json::parse(last);
}

}  // namespace

TEST_CASE("config parsing") {
  const auto c = parse_config(nlohmann::json::parse(R"({"run": {"t": 0.5, "trials": 10}, "grid": {"n": 11}})"));
  CHECK(c.run.t == 0.5);
  CHECK(c.run.trials == 10);
  CHECK(c.grid.n == 11);
  CHECK(c.grid.lo == -6.0);

  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"run": {"tt": 1}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"extra": {}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse(R"({"run": {"t": "one"}})")), ConfigError);
  CHECK_THROWS_AS(parse_config(nlohmann::json::parse("[1, 2]")), ConfigError);

  // every materialized default parses back to the same document
  const ExperimentConfig d;
  CHECK(parse_config(d.to_json()).to_json() == d.to_json());
}

TEST_CASE("config validation and overrides") {
  Overrides o;
  o.trials = 0;
  CHECK_THROWS_AS(resolve_config(std::nullopt, o), ConfigError);

  const fs::path dir = scratch("cfg");
  fs::create_directories(dir);
  const fs::path file = dir / "c.json";
  std::ofstream(file) << R"({"run": {"t": 2.0, "seed": 5}, "hierarchy": {"order": 3}})";
  Overrides flags;
  flags.seed = 9;
  flags.grid_n = 31;
  flags.out = (dir / "out").string();
  const auto c = resolve_config(file, flags);
  CHECK(c.run.t == 2.0);
  CHECK(c.run.seed == 9);
  CHECK(c.grid.n == 31);
  CHECK(c.hierarchy.order == 3);
  CHECK(c.run.out == (dir / "out").string());

  Overrides bad_order;
  bad_order.order = 5;
  CHECK_THROWS_AS(resolve_config(std::nullopt, bad_order), ConfigError);
  Overrides bad_grid;
  bad_grid.grid_lo = 3.0;
  bad_grid.grid_hi = 1.0;
  CHECK_THROWS_AS(resolve_config(std::nullopt, bad_grid), ConfigError);
  CHECK_THROWS_AS(load_config(dir / "missing.json"), ConfigError);

  ::setenv("BBMLAB_OUT", "/tmp/from_env", 1);
  CHECK(resolve_config(std::nullopt, {}).run.out == "/tmp/from_env");
  ::unsetenv("BBMLAB_OUT");
  CHECK(resolve_config(std::nullopt, {}).run.out == "bbmlab_out");
}

TEST_CASE("csv and digests") {
  const fs::path dir = scratch("csv");
  fs::create_directories(dir);
  {
    CsvWriter w(dir / "a.csv", {{"seed", "1"}}, {"x", "y"});
    w.row(std::vector<double>{0.1, 1.0 / 3.0});
    CHECK_THROWS_AS(w.row(std::vector<double>{1.0}), ShapeError);
  }
  const auto lines = read_data_section(dir / "a.csv");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "x,y");
  CHECK(lines[1] == "0.10000000000000001,0.33333333333333331");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);

  std::ofstream(dir / "abc.txt", std::ios::binary) << "abc";
  CHECK(sha256_file(dir / "abc.txt") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("manifest lifecycle") {
  const fs::path dir = scratch("manifest");
  RunManifest m(dir, "pde", nlohmann::json{{"k", 1}}, 42);
  auto read = [&] { return nlohmann::json::parse(std::ifstream(m.path())); };
  CHECK(read().at("status") == "running");
  std::ofstream(dir / "out.csv") << "x\n1\n";
  m.add_output("out.csv");
  m.finalize("ok");
  const auto j = read();
  CHECK(j.at("status") == "ok");
  CHECK(j.at("schema_version") == kSchemaVersion);
  CHECK(j.at("seed") == 42);
  CHECK(j.at("config").at("k") == 1);
  CHECK(j.contains("wall_seconds"));
  CHECK(j.at("outputs").at(0).at("sha256") == sha256_file(dir / "out.csv"));
}

TEST_CASE("subcommands write what the manifest lists") {
  const fs::path out = scratch("pde");
  std::ostringstream stdout_, log;
  CHECK(run_subcommand("pde", small_config(out), stdout_, log) == kExitOk);
  const auto summary = last_json_line(stdout_.str());
  CHECK(summary.at("status") == "ok");
  const auto manifest = nlohmann::json::parse(std::ifstream(out / "manifest.json"));
  CHECK(manifest.at("status") == "ok");
  CHECK(manifest.at("config") == small_config(out).to_json());
  for (const auto& o : manifest.at("outputs"))
    CHECK(o.at("sha256") == sha256_file(out / o.at("path").get<std::string>()));
  CHECK(fs::exists(out / "fkpp.csv"));
  CHECK(fs::exists(out / "comparison.json"));
}

TEST_CASE("hierarchy and chaos-check subcommands") {
  const fs::path out = scratch("hier");
  std::ostringstream s, log;
  auto c = small_config(out);
  c.hierarchy.order = 2;
  CHECK(run_subcommand("hierarchy", c, s, log) == kExitOk);
  const auto r = nlohmann::json::parse(std::ifstream(out / "residual_n2.json"));
  for (const char* key : {"schema_version", "n", "t", "grid", "max_residual", "convergence_slope"})
    CHECK(r.contains(key));
  CHECK(fs::exists(out / "rho2.csv"));
  CHECK(fs::exists(out / "mass.csv"));

  const fs::path out2 = scratch("chaos");
  c.run.out = out2.string();
  std::ostringstream s2;
  CHECK(run_subcommand("chaos-check", c, s2, log) == kExitOk);
  const auto report = nlohmann::json::parse(std::ifstream(out2 / "chaos_check.json"));
  for (const auto& e : report.at("identities")) {
    CHECK(e.contains("identity_name"));
    CHECK(e.contains("max_error"));
    CHECK(e.contains("tolerance"));
    CHECK(e.at("pass") == true);
  }
}

TEST_CASE("simulate is reproducible across thread counts") {
  auto run = [](const std::string& name, unsigned threads) {
    const fs::path out = scratch(name);
    auto c = small_config(out);
    c.run.threads = threads;
    std::ostringstream s, log;
    REQUIRE(run_subcommand("simulate", c, s, log) == kExitOk);
    return out;
  };
  const fs::path a = run("sim1", 1);
  const fs::path b = run("sim3", 3);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(a))
    if (e.path().extension() == ".csv") files.push_back(e.path().filename());
  CHECK(files.size() == 7);
  CHECK(compare_data_sections(a, b, files).pass);
}

TEST_CASE("errors are reported as JSON with exit codes") {
  std::ostringstream s, log;
  auto c = small_config(scratch("err"));
  c.run.t = 6.0;
  c.run.max_particles = 20;
  CHECK(run_subcommand("simulate", c, s, log) == kExitResource);
  const auto e = last_json_line(s.str());
  CHECK(e.at("error").at("type") == "resource");
  CHECK(e.at("error").contains("trial"));
  CHECK(e.at("schema_version") == kSchemaVersion);
  const auto manifest = nlohmann::json::parse(std::ifstream(fs::path(c.run.out) / "manifest.json"));
  CHECK(manifest.at("status") == "error");

  std::ostringstream s2;
  CHECK(run_subcommand("bogus", small_config(scratch("err2")), s2, log) == kExitConfig);
  CHECK(last_json_line(s2.str()).at("error").at("type") == "config");
}
