#include "photometrix/cli/app.hpp"
#include "photometrix/cli/config.hpp"
#include "photometrix/cli/csv.hpp"
#include "photometrix/cli/pipelines.hpp"

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace photometrix::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("photometrix_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

nlohmann::json manifest(const fs::path& dir) { return nlohmann::json::parse(slurp(dir / "manifest.json")); }

}  // namespace

TEST_CASE("config text") {
  const RawConfig c = parse_config_text("# comment\n\n eta = 0.95  # inline\nN=2,4\n");
  CHECK(c.at("eta") == "0.95");
  CHECK(c.at("N") == "2,4");
  CHECK_THROWS_AS(parse_config_text("eta 0.9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config_text("= 0.9\n"), ConfigError);
  CHECK_THROWS_AS(read_config_file("/nonexistent/photometrix.cfg"), ConfigError);
}

TEST_CASE("typed parameters") {
  Params p({{"eta", "0.9"}, {"N", "2, 4"}, {"flag", "false"}, {"stray", "1"}});
  CHECK(p.number("eta", 1.0) == 0.9);
  CHECK(p.integers("N", {8}) == std::vector<int>{2, 4});
  CHECK_FALSE(p.flag("flag", true));
  CHECK(p.number("T", 10.0) == 10.0);
  CHECK(p.resolved().at("T") == "10");
  CHECK_THROWS_AS(p.finish(), ConfigError);
  Params bad({{"eta", "abc"}, {"n", "2.5"}});
  CHECK_THROWS_AS(bad.number("eta", 1.0), ConfigError);
  CHECK_THROWS_AS(bad.integer("n", 1), ConfigError);
}

TEST_CASE("number formatting round-trips") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 12345.678, 0.95})
    CHECK(std::strtod(format_number(v).c_str(), nullptr) == v);
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_cell(Cell{0.1}) == "0.10000000000000001");
  CHECK(format_cell(Cell{7LL}) == "7");
}

TEST_CASE("grid parsing") {
  const auto axes = parse_grid("eta=0.9:1.0:0.02");
  REQUIRE(axes.size() == 1);
  CHECK(axes[0].name == "eta");
  REQUIRE(axes[0].values.size() == 6);
  CHECK(axes[0].values.back() == 1.0);
  const auto two = parse_grid("eta=0.9,0.95; t_ext=0:0.1:0.05");
  REQUIRE(two.size() == 2);
  CHECK(two[1].values.size() == 3);
  CHECK(parse_grid("").empty());
  CHECK(parse_grid("eta=")[0].values.empty());
  CHECK_THROWS_AS(parse_grid("eta"), ConfigError);
  CHECK_THROWS_AS(parse_grid("eta=0.9:1.0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("eta=1:2:0"), ConfigError);
  CHECK_THROWS_AS(parse_grid("eta=a,b"), ConfigError);
  CHECK_THROWS_AS(parse_grid("eta=1;eta=2"), ConfigError);
}

TEST_CASE("unknown pipeline") {
  const Run r = run_cli({"fig9"});
  CHECK(r.code == kConfigError);
  CHECK(r.err.find("usage") != std::string::npos);
  CHECK(run_cli({}).code == kConfigError);
  CHECK(run_cli({"--help"}).code == kOk);
}

TEST_CASE("exit codes of the executable") {
  const fs::path dir = scratch("exe");
  const std::string exe = PHOTOMETRIX_EXE;
  auto status = [&](const std::string& args) {
    const int s = std::system((exe + " " + args + " > /dev/null 2>&1").c_str());
    return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
  };
  CHECK(status("fig9") == 2);
  CHECK(status("app-timescale --N 10 --exact false --out " + dir.string()) == 0);
  CHECK(status("sweep --engine tfs-precision --T 1 --t_ext 2 --out " + dir.string()) == 3);
}

TEST_CASE("fig2 defaults") {
  const fs::path dir = scratch("fig2");
  REQUIRE(run_cli({"fig2", "--out", dir.string()}).code == kOk);
  const auto rows = read_csv(dir / "fig2.csv");
  REQUIRE(rows.size() > 1);
  CHECK(rows[0] == std::vector<std::string>{"N_abs", "N", "dg2_per_gT", "nu_opt", "classical"});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i][0] == rows[i][4]);
  const auto m = manifest(dir);
  CHECK(m["pipeline"] == "fig2");
  CHECK(m["parameters"]["T"] == "10");
  CHECK(m["parameters"]["N"] == "2,4,6,8");
  REQUIRE(m["outputs"].size() == 1);
  CHECK(m["outputs"][0]["file"] == "fig2.csv");
  CHECK(m["outputs"][0]["rows"] == rows.size() - 1);
  CHECK(m.contains("wall_clock_seconds"));
  CHECK(m.contains("version"));
}

TEST_CASE("outputs are byte-identical across runs") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(run_cli({"fig3a", "--out", a.string()}).code == kOk);
  REQUIRE(run_cli({"fig3a", "--out", b.string()}).code == kOk);
  CHECK(slurp(a / "fig3a.csv") == slurp(b / "fig3a.csv"));
  CHECK(slurp(a / "fig3a.csv").find('\r') == std::string::npos);
}

TEST_CASE("flags override the config file") {
  const fs::path dir = scratch("override");
  std::ofstream(dir / "run.cfg") << "eta = 0.9\nt_ext = 0.1\nN = 4\n";
  REQUIRE(run_cli({"fig3a", "--config", (dir / "run.cfg").string(), "--eta", "0.97", "--out", dir.string()}).code == kOk);
  const auto m = manifest(dir);
  CHECK(m["parameters"]["eta"] == "0.97");
  CHECK(m["parameters"]["t_ext"] == "0.1");
  CHECK(run_cli({"fig3a", "--bogus", "1", "--out", dir.string()}).code == kConfigError);
  CHECK(run_cli({"fig3a", "--eta", "1.5", "--out", dir.string()}).code == kConfigError);
  CHECK(run_cli({"fig3a", "--N", "3", "--out", dir.string()}).code == kConfigError);
  CHECK(run_cli({"fig3a", "--eta", "--out", dir.string()}).code == kConfigError);
}

TEST_CASE("sweep cardinality") {
  const fs::path dir = scratch("sweep");
  REQUIRE(run_cli({"sweep", "--grid", "eta=0.9,0.95,1.0", "--grid", "t_ext=0,0.05", "--N", "8", "--out", dir.string()}).code == kOk);
  const auto rows = read_csv(dir / "sweep.csv");
  CHECK(rows.size() == 7);
  CHECK(rows[0] == std::vector<std::string>{"eta", "t_ext", "ratio"});
  CHECK(manifest(dir)["outputs"][0]["rows"] == 6);

  const fs::path empty = scratch("sweep_empty");
  REQUIRE(run_cli({"sweep", "--grid", "", "--out", empty.string()}).code == kOk);
  CHECK(read_csv(empty / "sweep.csv").size() == 1);

  CHECK(run_cli({"sweep", "--grid", "eta=0.9:1", "--out", dir.string()}).code == kConfigError);
  CHECK(run_cli({"sweep", "--grid", "zeta=1,2", "--out", dir.string()}).code == kConfigError);
  CHECK(run_cli({"sweep", "--engine", "nope", "--out", dir.string()}).code == kConfigError);
  CHECK(run_cli({"fig2", "--grid", "eta=1", "--out", dir.string()}).code == kConfigError);
}

TEST_CASE("sweep reproduces a fig3b curve") {
  const fs::path dir = scratch("fig3b");
  REQUIRE(run_cli({"fig3b", "--N", "8", "--points", "6", "--envelope", "false", "--out", dir.string()}).code == kOk);
  const auto curve = read_csv(dir / "fig3b.csv");
  REQUIRE(curve.size() == 7);
  std::string grid = "t_ext=";
  for (std::size_t i = 1; i < curve.size(); ++i) grid += (i > 1 ? "," : "") + curve[i][2];
  const fs::path sw = scratch("fig3b_sweep");
  REQUIRE(run_cli({"sweep", "--engine", "tfs-boundary", "--grid", grid, "--out", sw.string()}).code == kOk);
  const auto rows = read_csv(sw / "sweep.csv");
  REQUIRE(rows.size() == curve.size());
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][0] == curve[i][2]);
    CHECK(rows[i][1] == curve[i][3]);
    CHECK(rows[i][3] == curve[i][5]);
  }
}

TEST_CASE("every pipeline runs and its manifest matches the files") {
  const std::vector<std::vector<std::string>> runs{
      {"fig1", "--n_abs_min", "0.5", "--n_abs_max", "2", "--per_decade", "2", "--n_per_mode", "100"},
      {"fig2"},
      {"fig3a"},
      {"fig3b", "--N", "2,8", "--points", "4", "--envelope_N", "2,4,8", "--envelope_points", "3"},
      {"cavity-perror"},
      {"cavity-ac", "--n_atoms", "20", "--n", "2,4", "--boundary_n", "2", "--points", "3"},
      {"app-cfi", "--n_max", "4", "--phase_points", "5"},
      {"app-regions", "--points", "4", "--bound_N", "4", "--N", "4"},
      {"app-tfs-noise"},
      {"app-dicke-prep", "--n_atoms", "10,20", "--points", "5", "--pmf_n_atoms", "10"},
      {"app-timescale", "--N", "10,100"},
  };
  REQUIRE(runs.size() == pipelines().size());
  for (auto args : runs) {
    const fs::path dir = scratch(args[0]);
    args.push_back("--out");
    args.push_back(dir.string());
    const Run r = run_cli(args);
    INFO(args[0] << ": " << r.err);
    REQUIRE(r.code == kOk);
    const auto m = manifest(dir);
    CHECK(m["pipeline"] == args[0]);
    for (const auto& o : m["outputs"]) {
      const auto rows = read_csv(dir / o["file"].get<std::string>());
      CHECK(rows.size() - 1 == o["rows"].get<std::size_t>());
      for (const auto& row : rows) CHECK(row.size() == rows[0].size());
    }
  }
}

TEST_CASE("fig1 columns and the NOON value at one absorbed photon") {
  const fs::path dir = scratch("fig1_noon");
  REQUIRE(run_cli({"fig1", "--n_abs_min", "0.5", "--n_abs_max", "1", "--per_decade", "1", "--n_per_mode", "100", "--out", dir.string()}).code == kOk);
  const auto rows = read_csv(dir / "fig1.csv");
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].size() == 7);
  CHECK(rows[2][0] == "1");
  CHECK(std::strtod(rows[2][2].c_str(), nullptr) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("cavity example echoes SI inputs") {
  const fs::path dir = scratch("haas");
  REQUIRE(run_cli({"cavity-perror", "--haas_coupling_hz", "1.7e8", "--out", dir.string()}).code == kOk);
  const auto m = manifest(dir);
  CHECK(std::stod(m["parameters"]["haas_coupling_hz"].get<std::string>()) == 1.7e8);
  CHECK(std::stod(m["parameters"]["haas_kappa_hz"].get<std::string>()) == 52e6);
  const auto rows = read_csv(dir / "cavity_haas.csv");
  REQUIRE(rows.size() == 2);
  CHECK(std::strtod(rows[1][4].c_str(), nullptr) == doctest::Approx(0.26e-9).epsilon(0.02));
}
