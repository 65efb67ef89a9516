#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dcloud/config.hpp"
#include "dcloud/ingest.hpp"
#include "dcloud/models.hpp"
#include "dcloud/report.hpp"
#include "dcloud/sweep.hpp"
#include "dcloud/synth.hpp"

using namespace dcloud;

namespace {

struct Flags {
  std::string out_dir = ".";
  bool trace_dump = false;
  bool strict_scan = false;
  std::optional<SimTime> quantum;
  int parallel = 0;
};

std::filesystem::path prepare_out(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError(kExitConfig, "output directory is not writable: " + dir);
  }
  return dir;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(kExitConfig, "cannot write " + path.string());
  return out;
}

LoadedConfig load_with_flags(const std::string& path, const Flags& flags) {
  auto cfg = load_config(path);
  if (flags.quantum) {
    if (*flags.quantum < 1) throw ConfigError(kExitConfig, "--quantum must be >= 1");
    cfg.scenario.lease_quantum = *flags.quantum;
  }
  cfg.run.out_dir = flags.out_dir;
  cfg.run.trace_dump = flags.trace_dump;
  cfg.run.strict_scan = cfg.run.strict_scan || flags.strict_scan;
  cfg.run.parallel = flags.parallel;
  return cfg;
}

RunOptions run_options(const RunSpec& run) {
  RunOptions opts;
  opts.strict_scan = run.strict_scan;
  opts.engine.livelock_limit = run.livelock_limit;
  return opts;
}

int cmd_run(const std::string& path, const Flags& flags) {
  const auto cfg = load_with_flags(path, flags);
  const auto out_dir = prepare_out(cfg.run.out_dir);
  std::vector<ReportRow> rows;
  std::vector<ProviderRow> providers;
  for (auto model : cfg.run.models) {
    auto opts = run_options(cfg.run);
    std::ofstream trace;
    if (cfg.run.trace_dump) {
      trace = open_out(out_dir / ("trace_" + std::string(to_string(model)) + ".tsv"));
      opts.trace = &trace;
    }
    const auto result = run_scenario(with_model(cfg.scenario, model), opts);
    for (const auto& r : result.reports) rows.push_back({cfg.scenario.name, r});
    providers.push_back({cfg.scenario.name, result.provider});
  }
  auto csv = open_out(out_dir / "run.csv");
  write_runs_csv(csv, rows, providers);
  write_runs_table(std::cout, rows, providers);
  return kExitOk;
}

int cmd_sweep(const std::string& path, const Flags& flags) {
  const auto cfg = load_with_flags(path, flags);
  if (cfg.run.sweeps.empty()) throw ConfigError(kExitConfig, "no [sweep NAME] sections in " + path);
  const auto out_dir = prepare_out(cfg.run.out_dir);
  for (const auto& sw : cfg.run.sweeps) {
    SweepJob job;
    for (const auto& e : cfg.scenario.entries) {
      if (e.name == sw.workload) job.entry = e;
    }
    job.pool_capacity = cfg.scenario.pool_capacity;
    job.lease_quantum = cfg.scenario.lease_quantum;
    job.options = run_options(cfg.run);
    const auto grid = sweep_grid(sw.initial_nodes, sw.threshold_ratios);
    const auto rows = sweep_parallel(job, grid, cfg.run.parallel);
    auto csv = open_out(out_dir / ("sweep_" + sw.workload + ".csv"));
    write_sweep_csv(csv, rows);
    std::size_t failed = 0;
    for (const auto& r : rows) failed += r.error.empty() ? 0 : 1;
    std::cout << sw.workload << ": " << rows.size() << " grid points, " << failed << " failed\n";
  }
  return kExitOk;
}

int cmd_validate(const std::string& path, const std::string& kind_flag) {
  WorkloadKind kind = WorkloadKind::Htc;
  if (kind_flag == "mtc" || (kind_flag.empty() && std::filesystem::path(path).extension() == ".dag")) {
    kind = WorkloadKind::Mtc;
  }
  if (!std::filesystem::exists(path)) {
    std::cerr << "error: trace file not found: " << path << '\n';
    return kExitIngest;
  }
  try {
    const auto w = load_workload_file(path, kind);
    const auto violations = validate_workload(w, std::nullopt);
    for (const auto& v : violations) std::cout << "job " << v.job << ": " << v.rule << ": " << v.detail << '\n';
    std::cout << path << ": " << w.jobs.size() << " jobs, " << w.skipped_lines << " skipped lines, max "
              << w.max_nodes() << " nodes, " << violations.size() << " violations\n";
    return violations.empty() ? kExitOk : kExitIngest;
  } catch (const ValidationError& err) {
    for (const auto& v : err.violations()) std::cout << "job " << v.job << ": " << v.rule << ": " << v.detail << '\n';
    std::cerr << "error: " << err.what() << '\n';
    return kExitIngest;
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitIngest;
  }
}

int cmd_tco(const std::string& path) {
  const auto cfg = load_config(path);
  if (!cfg.run.tco_dcs && !cfg.run.tco_ssp) throw ConfigError(kExitConfig, "no [tco_dcs] or [tco_ssp] section");
  std::optional<double> dcs, ssp;
  if (cfg.run.tco_dcs) {
    dcs = tco_dcs(*cfg.run.tco_dcs);
    std::cout << "tco_dcs," << format_decimal(dcs, 2) << '\n';
  }
  if (cfg.run.tco_ssp) {
    ssp = tco_ssp(*cfg.run.tco_ssp);
    std::cout << "tco_ssp," << format_decimal(ssp, 2) << '\n';
  }
  if (dcs && ssp) std::cout << "ssp_savings_pct," << format_decimal(savings_percent(*ssp, *dcs), 1) << '\n';
  return kExitOk;
}

int cmd_synth(const std::string& generator, std::uint64_t seed, const std::string& out_path) {
  Workload w;
  if (generator == "montage") {
    w = generate_montage(MontageShape{}, seed);
  } else if (generator == "nasa") {
    w = generate_htc_trace(nasa_ipsc_shape(), seed);
  } else if (generator == "blue") {
    w = generate_htc_trace(sdsc_blue_shape(), seed);
  } else {
    std::cerr << "error: unknown generator " << generator << '\n';
    return kExitUsage;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << '\n';
    return kExitConfig;
  }
  if (w.kind == WorkloadKind::Mtc) {
    write_dag(out, w);
  } else {
    write_swf(out, w);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dcloud: discrete event simulator for cluster cloud usage models"};
  app.require_subcommand(1);
  Flags flags;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", flags.out_dir, "Output directory");
    sub->add_flag("--trace-dump", flags.trace_dump, "Write a per-event trace for every run");
    sub->add_flag("--strict-scan", flags.strict_scan, "Start at most one HTC job per scan tick");
    sub->add_option("--quantum", flags.quantum, "Lease billing quantum in seconds");
    sub->add_option("--parallel", flags.parallel, "Worker threads for sweeps (0 = all)");
  };

  std::string config_path, trace_path, kind, generator, synth_out;
  std::uint64_t seed = 1;
  auto* run = app.add_subcommand("run", "Run every model in the scenario");
  run->add_option("config", config_path)->required();
  add_common(run);
  auto* sweep = app.add_subcommand("sweep", "Run the B x R grids of the scenario");
  sweep->add_option("config", config_path)->required();
  add_common(sweep);
  auto* validate = app.add_subcommand("validate", "Check a trace or workflow file");
  validate->add_option("trace", trace_path)->required();
  validate->add_option("--kind", kind, "htc or mtc (default: by extension)")->check(CLI::IsMember({"htc", "mtc"}));
  auto* tco = app.add_subcommand("tco", "Monthly cost of ownership, DCS vs SSP");
  tco->add_option("config", config_path)->required();
  auto* synth = app.add_subcommand("synth", "Write a synthetic workload fixture");
  synth->add_option("generator", generator, "nasa, blue or montage")->required();
  synth->add_option("output", synth_out)->required();
  synth->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*run) return cmd_run(config_path, flags);
    if (*sweep) return cmd_sweep(config_path, flags);
    if (*validate) return cmd_validate(trace_path, kind);
    if (*tco) return cmd_tco(config_path);
    if (*synth) return cmd_synth(generator, seed, synth_out);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return err.code();
  } catch (const SimulationAbort& err) {
    std::cerr << "simulation aborted: " << err.what() << '\n';
    return kExitSimulation;
  } catch (const std::invalid_argument& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitConfig;
  }
  return kExitUsage;
}
