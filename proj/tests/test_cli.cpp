#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dcloud/config.hpp"
#include "dcloud/report.hpp"
#include "dcloud/sweep.hpp"
#include "dcloud/synth.hpp"

using namespace dcloud;

namespace {

ExitCode config_error_code(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.code();
  }
  return kExitOk;
}

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dcloud_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

SimReport report(ModelKind m, double billed, std::optional<double> tps = std::nullopt) {
  SimReport r;
  r.workload = "w";
  r.model = m;
  r.billed_node_hours = billed;
  r.tasks_per_second = tps;
  return r;
}

}  // namespace

TEST_CASE("minimal config") {
  auto cfg = parse_config("[workload nasa]\nkind = htc\ntrace = nasa.swf\nfixed_size = 128\n", "/data");
  REQUIRE(cfg.workloads.size() == 1);
  CHECK(cfg.workloads[0].trace == "/data/nasa.swf");
  CHECK(cfg.workloads[0].fixed_size == 128);
  CHECK(cfg.run.models.size() == 4);
}

TEST_CASE("unknown key is rejected by name") {
  const std::string text = "[workload nasa]\nkind = htc\ntrace = a.swf\nfixed_size = 128\ntreshold = 1.2\n";
  CHECK(config_error_code(text) == kExitConfig);
  CHECK_THROWS_WITH(parse_config(text), doctest::Contains("treshold"));
}

TEST_CASE("schema errors") {
  CHECK(config_error_code("[workload a]\nkind = htc\n") == kExitConfig);
  CHECK(config_error_code("[bogus]\n") == kExitConfig);
  CHECK(config_error_code("key = 1\n") == kExitConfig);
  CHECK(config_error_code("[workload a]\nkind = htc\ngenerator = nasa\nfixed_size = 0\n") == kExitConfig);
  CHECK(config_error_code("[scenario]\npool_capacity = 500\nmodels = DRP\n[workload a]\nkind = htc\ngenerator = nasa\n") ==
        kExitConfig);
  CHECK(config_error_code("[sweep nope]\nB = 10\nR = 1\n") == kExitConfig);
}

TEST_CASE("sweep ranges") {
  auto cfg = parse_config(
      "[scenario]\nmodels = DSP\n[workload blue]\nkind = htc\ngenerator = blue\n"
      "[sweep blue]\nB = 10:80:10\nR = 1.0:2.0:0.1\n");
  REQUIRE(cfg.run.sweeps.size() == 1);
  CHECK(cfg.run.sweeps[0].initial_nodes.size() == 8);
  CHECK(cfg.run.sweeps[0].threshold_ratios.size() == 11);
  CHECK(cfg.run.sweeps[0].threshold_ratios.back() == 2.0);
  CHECK(sweep_grid(cfg.run.sweeps[0].initial_nodes, cfg.run.sweeps[0].threshold_ratios).size() == 88);
}

TEST_CASE("missing config and dangling trace have distinct codes") {
  try {
    load_config("/nonexistent/dcloud.conf");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.code() == kExitMissingConfig);
  }
  auto dir = temp_dir("dangling");
  std::ofstream(dir / "c.conf") << "[workload a]\nkind = htc\ntrace = missing.swf\nfixed_size = 4\n";
  try {
    load_config((dir / "c.conf").string());
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    CHECK(e.code() == kExitIngest);
  }
}

TEST_CASE("bundled consolidated scenario config") {
  auto cfg = load_config(DCLOUD_DATA_DIR "/consolidated.conf");
  REQUIRE(cfg.scenario.entries.size() == 3);
  CHECK(cfg.run.models.size() == 4);
  CHECK(cfg.scenario.entries[0].fixed_size == 128);
  CHECK(cfg.scenario.entries[1].fixed_size == 144);
  CHECK(cfg.scenario.entries[2].fixed_size == 166);
  CHECK(cfg.scenario.entries[0].params.initial_nodes == 40);
  CHECK(cfg.scenario.entries[0].params.threshold_ratio == 1.2);
  CHECK(cfg.scenario.entries[1].params.initial_nodes == 80);
  CHECK(cfg.scenario.entries[1].params.threshold_ratio == 1.5);
  CHECK(cfg.scenario.entries[2].params.initial_nodes == 10);
  CHECK(cfg.scenario.entries[2].params.threshold_ratio == 8.0);
  CHECK(cfg.scenario.entries[2].params.scan_interval == 3);
  CHECK(cfg.scenario.entries[0].window == 336 * kSecondsPerHour);
  CHECK_FALSE(cfg.scenario.entries[2].window);
  CHECK(cfg.scenario.lease_quantum == 3600);
  CHECK(cfg.run.tco_dcs);
  CHECK(cfg.run.tco_ssp);
}

TEST_CASE("csv with one run") {
  std::vector<ReportRow> rows = {{"s", report(ModelKind::Dcs, 10)}};
  std::ostringstream out;
  write_runs_csv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == std::string("# ") + kReportFormatVersion);
  CHECK(lines[1].rfind("scenario,model,workload", 0) == 0);
  CHECK_THROWS_AS(write_runs_csv(out, std::vector<ReportRow>{}), std::invalid_argument);
}

TEST_CASE("csv savings column and empty throughput") {
  std::vector<ReportRow> rows = {{"s", report(ModelKind::Dcs, 43008)},
                                 {"s", report(ModelKind::Ssp, 43008)},
                                 {"s", report(ModelKind::Drp, 54118)},
                                 {"s", report(ModelKind::Dsp, 29014)}};
  std::ostringstream out;
  write_runs_csv(out, rows);
  const auto text = out.str();
  CHECK(text.find(",0.0\n") != std::string::npos);
  CHECK(text.find(",-25.8\n") != std::string::npos);
  CHECK(text.find(",32.5\n") != std::string::npos);
  // tasks_per_second is empty, not 0, when nothing completed
  CHECK(text.find("DCS,w,htc,,,0,0,0,0,,0,") != std::string::npos);
}

TEST_CASE("one point sweep equals a direct run") {
  SweepJob job;
  job.entry.name = "nasa";
  job.entry.workload = generate_htc_trace(nasa_ipsc_shape(), 9);
  job.entry.params = PolicyParams::htc(40, 1.2);
  job.entry.window = 48 * kSecondsPerHour;
  auto rows = sweep_serial(job, sweep_grid({40}, {1.2}));
  REQUIRE(rows.size() == 1);
  ScenarioConfig sc;
  auto e = job.entry;
  e.model = ModelKind::Dsp;
  sc.entries = {e};
  CHECK(rows[0].report == run_dsp(sc).reports[0]);
}

TEST_CASE("parallel sweep rows equal serial rows") {
  SweepJob job;
  job.entry.name = "nasa";
  job.entry.workload = generate_htc_trace(nasa_ipsc_shape(), 9);
  job.entry.params = PolicyParams::htc(40, 1.2);
  job.entry.window = 72 * kSecondsPerHour;
  job.pool_capacity = 200;
  const auto grid = sweep_grid({10, 40, 80, 300}, {1.0, 1.5, 2.0});
  CHECK(grid.size() == 12);
  auto a = sweep_serial(job, grid);
  auto b = sweep_parallel(job, grid, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].report == b[i].report);
    CHECK(a[i].error == b[i].error);
  }
  // B above the pool capacity fails in-row and the sweep continues.
  CHECK_FALSE(a.back().error.empty());
  CHECK(a.front().report);
  std::ostringstream sa, sb;
  write_sweep_csv(sa, a);
  write_sweep_csv(sb, b);
  CHECK(sa.str() == sb.str());
}
