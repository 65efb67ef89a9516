#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dcloud/domain.hpp"
#include "dcloud/engine.hpp"
#include "dcloud/ledger.hpp"
#include "dcloud/metrics.hpp"

namespace dcloud {

// One service provider in a scenario.
struct TreEntry {
  std::string name;
  Workload workload;
  ModelKind model = ModelKind::Dcs;
  NodeCount fixed_size = 0;  // DCS / SSP partition size
  PolicyParams params;       // DSP policy
  SimTime start_offset = 0;
  // Observation period measured from start_offset. Without one the TRE lives
  // until its workload drains.
  std::optional<SimTime> window;
};

struct RunOptions {
  EngineOptions engine{};
  // HTC queues are scheduled only on scan ticks, one job per tick.
  bool strict_scan = false;
  // Event-trace dump target (tab-separated, one line per event).
  std::ostream* trace = nullptr;
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::optional<NodeCount> pool_capacity;  // nullopt = unbounded
  SimTime lease_quantum = kSecondsPerHour;
  double setup_cost_per_node = kSetupSecondsPerNode;
  std::vector<TreEntry> entries;

  // Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

enum class JobOutcome { Pending, Running, Completed, Unfinished, Unrunnable };

struct JobRecord {
  SimTime arrival = -1;
  SimTime ready = -1;  // dependencies satisfied
  SimTime start = -1;
  SimTime finish = -1;  // actual finish, or the cut-off instant for unfinished jobs
  JobOutcome outcome = JobOutcome::Pending;
};

struct ScenarioResult {
  std::vector<SimReport> reports;  // one per entry, in entry order
  ProviderReport provider;
  LeaseLedger ledger;
  std::vector<std::vector<JobRecord>> jobs;  // per entry, indexed by job id
  std::size_t events = 0;
};

// Runs every entry concurrently against one provision pool.
ScenarioResult run_scenario(const ScenarioConfig& scenario, const RunOptions& options = {});

enum class Ownership { Local, Leased };

// Constant-size partition (DCS when Local, SSP when Leased).
SimReport run_fixed(const Workload& workload, NodeCount size, Ownership owned,
                    std::optional<SimTime> window = std::nullopt, SimTime quantum = kSecondsPerHour,
                    const RunOptions& options = {});

// Per-job leases with no queueing on an unbounded pool.
SimReport run_drp(const Workload& workload, std::optional<SimTime> window = std::nullopt,
                  SimTime quantum = kSecondsPerHour, const RunOptions& options = {});

// All DSP entries negotiate with one pool. Throws std::invalid_argument when an
// entry is not DSP.
ScenarioResult run_dsp(const ScenarioConfig& scenario, const RunOptions& options = {});

// Copy of the scenario with every entry switched to `model`.
ScenarioConfig with_model(const ScenarioConfig& scenario, ModelKind model);

}  // namespace dcloud
