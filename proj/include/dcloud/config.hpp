#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcloud/metrics.hpp"
#include "dcloud/models.hpp"

namespace dcloud {

// Process exit codes shared by every CLI verb.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,       // schema violation
  kExitIngest = 3,       // unreadable or malformed trace, dangling trace path
  kExitSimulation = 4,   // simulation abort
  kExitMissingConfig = 5,
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

enum class WindowMode { Slice, Auto, Fixed };

struct WorkloadSpec {
  std::string name;
  WorkloadKind kind = WorkloadKind::Htc;
  std::string trace;      // resolved path, empty when a generator is used
  std::string generator;  // nasa | blue | montage
  std::optional<NodeCount> original_scale;
  std::optional<NodeCount> target_nodes;
  std::optional<SimTime> slice_start;
  std::optional<SimTime> slice_duration;
  WindowMode window_mode = WindowMode::Auto;
  SimTime window = 0;
  SimTime start_offset = 0;
  NodeCount fixed_size = 0;
  PolicyParams params;
};

struct SweepSpec {
  std::string workload;
  std::vector<NodeCount> initial_nodes;
  std::vector<double> threshold_ratios;
};

struct RunSpec {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<ModelKind> models;
  std::vector<SweepSpec> sweeps;
  std::uint64_t seed = 1;
  bool trace_dump = false;
  bool strict_scan = false;
  int parallel = 0;  // 0 = all available
  std::size_t livelock_limit = 1'000'000;
  std::optional<TcoInput> tco_dcs;
  std::optional<TcoInput> tco_ssp;
};

struct LoadedConfig {
  RunSpec run;
  std::vector<WorkloadSpec> workloads;
  // Entries carry both the fixed size and the DSP policy; the model is set per
  // run with with_model().
  ScenarioConfig scenario;
};

// Parses and validates the config text. Relative trace paths resolve against
// base_dir. Workload files are not loaded.
LoadedConfig parse_config(const std::string& text, const std::string& base_dir = ".");

// Reads the file, parses it and loads every workload (files or generators).
LoadedConfig load_config(const std::string& path);

// Loads (and scales/slices) the workload described by one spec.
Workload load_workload(const WorkloadSpec& spec, std::uint64_t seed);

}  // namespace dcloud
