#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "commands.hpp"
#include "config.hpp"
#include "radarint/error.hpp"

using namespace radarint;
using namespace radarint::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("radarint_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RADARINT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// Two-lane 600 m road: quick enough for every command.
const char* kSmallConfig = R"({
  "scenario": {"length_m": 600, "density_veh_per_km": 60, "lanes_per_direction": 2},
  "compass": {"modes": ["off", "effective"]},
  "interferers": {"d_grid_m": [100, 500, 1000, 2000]},
  "sweep": {"axis": "bandwidth", "values": [1.5e9, 3e9]},
  "validate": {"trials": 20000}
})";

}  // namespace

TEST(Config, DefaultsAreFrontRadar) {
  const auto cfg = parse_config("{}");
  EXPECT_EQ(cfg.layout.kind, RadarKind::Front);
  EXPECT_EQ(cfg.timing.n_chirps, 2000);
  EXPECT_EQ(cfg.schemes.size(), 3u);
  EXPECT_NEAR(cfg.d_max(), 2694.9, 0.003 * 2694.9);
  EXPECT_EQ(cfg.distance_grid().size(), 40u);
  EXPECT_DOUBLE_EQ(cfg.distance_grid().back(), cfg.d_max());
}

TEST(Config, CornerLayoutPicksCornerDefaults) {
  const auto cfg = parse_config(R"({"layout": {"kind": "corner"}})");
  EXPECT_EQ(cfg.layout.kind, RadarKind::Corner);
  EXPECT_EQ(cfg.timing.n_chirps, 1555);
  EXPECT_EQ(cfg.layout.boresight_offsets.size(), 4u);
  EXPECT_NEAR(cfg.d_max(), 120.38, 0.003 * 120.38);
}

TEST(Config, ReadsSections) {
  const auto cfg = parse_config(R"({
    "timing": {"b_total_hz": 5e9, "k_ch": 50},
    "link_budget": {"d_max_m": 800},
    "compass": {"modes": ["effective"], "n_sectors": 4, "sector_offset_deg": 10},
    "schemes": ["chirp_hopping"],
    "distribution": {"probabilities": [0.5, 0.5]},
    "model": {"frame_overlap": "exact"},
    "seed": 9, "threads": 2, "out_dir": "elsewhere"
  })");
  EXPECT_EQ(cfg.timing.b_total_hz, 5e9);
  EXPECT_EQ(cfg.timing.k_ch, 50);
  EXPECT_EQ(cfg.d_max(), 800.0);
  EXPECT_EQ(cfg.compass_config(CompassMode::Effective).n_sectors, 4);
  EXPECT_EQ(cfg.compass_config(CompassMode::Effective).sector_offset, 10.0);
  ASSERT_EQ(cfg.schemes.size(), 1u);
  EXPECT_EQ(cfg.schemes[0], Scheme::ChirpHopping);
  ASSERT_TRUE(cfg.distribution.has_value());
  EXPECT_EQ(cfg.frame_overlap, FrameOverlap::Exact);
  EXPECT_EQ(cfg.scenario.highway.seed, 9u);
  EXPECT_EQ(cfg.validation.seed, 9u);
  EXPECT_EQ(cfg.threads, 2u);
  EXPECT_EQ(cfg.out_dir, fs::path("elsewhere"));
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config(R"({"bogus": 1})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"timing": {"b_tot": 1}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"timing": {"n_chirps": "many"}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"timing": )"), ValidationError);
  EXPECT_THROW(parse_config(R"({"schemes": ["teleport"]})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"sweep": {"axis": "colour"}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"distribution": {"probabilities": [0.5, 0.2]}})"),
               ValidationError);
  EXPECT_THROW(parse_config(R"({"compass": {"corner_pairing": "diagonal"}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"model": {"frame_overlap": "rough"}})"), ValidationError);
  EXPECT_THROW(load_config("/nonexistent/radarint.json"), IoError);
}

TEST(Config, ShippedExamplesLoad) {
  std::size_t n = 0;
  for (const auto& entry : fs::directory_iterator(RADARINT_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    ++n;
    EXPECT_NO_THROW(load_config(entry.path()).validate()) << entry.path();
  }
  EXPECT_GE(n, 5u);
}

TEST(Config, ValidateCatchesInconsistentTiming) {
  auto cfg = parse_config(R"({"timing": {"b_chirp_hz": 4e9}})");
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Config, TracePathIsRelativeToConfig) {
  const auto dir = scratch("trace_path");
  write(dir / "cfg.json", R"({"scenario": {"trace": "road.csv"}})");
  const auto cfg = load_config(dir / "cfg.json");
  ASSERT_TRUE(cfg.scenario.trace.has_value());
  EXPECT_EQ(*cfg.scenario.trace, dir / "road.csv");
}

TEST(Commands, ExitCodeMapping) {
  std::ostringstream err;
  EXPECT_EQ(run_guarded([] { return 0; }, err), kOk);
  EXPECT_EQ(run_guarded([]() -> int { throw ValidationError("x"); }, err), kValidationFailure);
  EXPECT_EQ(run_guarded([]() -> int { throw CapacityError("x"); }, err), kValidationFailure);
  EXPECT_EQ(run_guarded([]() -> int { throw IoError("x"); }, err), kIoFailure);
  EXPECT_NE(err.str().find("error: x"), std::string::npos);

  ValidationReport report;
  report.checks.push_back({"ok", 0.5, 0.5, 0.0, 0.0, true});
  EXPECT_EQ(exit_code_for(report), kOk);
  report.checks.push_back({"broken", 0.5, 0.7, 0.01, 0.03, false});
  EXPECT_EQ(exit_code_for(report), kOracleFailure);
}

TEST(Commands, NoInterferersMeansInfiniteTime) {
  auto cfg = parse_config(R"({"distribution": {"probabilities": [1]}})");
  const auto rows = evaluate_rows(cfg, "bandwidth", 3e9, nullptr);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    EXPECT_EQ(r.p_fail, 0.0);
    EXPECT_TRUE(std::isinf(r.t_fail_s));
  }
  std::ostringstream csv;
  write_results_csv(csv, rows);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "axis,axis_value,scheme,compass_mode,p_fail,t_fail_s,t_rf_s,week_s,year_s,"
            "hopping_possible");
  EXPECT_NE(csv.str().find(",inf,"), std::string::npos);
}

TEST(Commands, EmptyScenarioIsRejected) {
  const auto dir = scratch("empty_trace");
  write(dir / "road.csv", "time,id,x,y,heading,length,width\n");
  auto cfg = parse_config("{}");
  cfg.scenario.trace = dir / "road.csv";
  EXPECT_THROW(load_scenario(cfg), ValidationError);
}

TEST(Binary, CommandsSucceedAndAreByteStable) {
  const auto dir = scratch("stable");
  write(dir / "cfg.json", kSmallConfig);
  const std::string cfg = "--config " + (dir / "cfg.json").string();
  const char* files[][2] = {{"generate", "scenario.csv"},
                            {"interferers", "distribution.csv"},
                            {"interferers", "curve.csv"},
                            {"interferers", "curve_compass.csv"},
                            {"evaluate", "results.csv"},
                            {"sweep", "results.csv"},
                            {"validate", "validation_report.txt"}};
  for (const auto& f : files) {
    const std::string cmd = f[0];
    const auto a = dir / (cmd + "_a");
    const auto b = dir / (cmd + "_b");
    ASSERT_EQ(run_cli(cmd + " " + cfg + " --seed 5 --out " + a.string()), 0) << cmd;
    ASSERT_EQ(run_cli(cmd + " " + cfg + " --seed 5 --out " + b.string() + " --threads 3"), 0)
        << cmd;
    const std::string first = slurp(a / f[1]);
    EXPECT_FALSE(first.empty()) << f[1];
    EXPECT_EQ(first, slurp(b / f[1])) << cmd << ' ' << f[1];
  }
  EXPECT_TRUE(fs::exists(dir / "interferers_a" / "curve.svg"));
  EXPECT_TRUE(fs::exists(dir / "evaluate_a" / "t_fail.svg"));
}

TEST(Binary, ExitCodes) {
  const auto dir = scratch("exit_codes");
  write(dir / "unknown.json", R"({"colour": "red"})");
  EXPECT_EQ(run_cli("evaluate --config " + (dir / "unknown.json").string()), kValidationFailure);
  EXPECT_EQ(run_cli("evaluate --config " + (dir / "missing.json").string()), kIoFailure);
  EXPECT_EQ(run_cli("teleport"), kValidationFailure);
  // 3 lanes of 100 m with a 7 m headway hold at most 14 cars each
  write(dir / "full.json",
        R"({"scenario": {"length_m": 100, "density_veh_per_km": 2000}})");
  EXPECT_NE(run_cli("generate --config " + (dir / "full.json").string() + " --out " +
                    (dir / "full").string()),
            kOk);
  write(dir / "trace.json", R"({"scenario": {"trace": "nowhere.csv"}})");
  EXPECT_EQ(run_cli("evaluate --config " + (dir / "trace.json").string() + " --out " +
                    (dir / "t").string()),
            kIoFailure);
}
