#pragma once

#include <optional>
#include <span>
#include <string>

#include "dcloud/domain.hpp"
#include "dcloud/ledger.hpp"

namespace dcloud {

enum class ModelKind { Dcs, Ssp, Drp, Dsp };

std::string_view to_string(ModelKind kind);
std::optional<ModelKind> parse_model_kind(std::string_view text);

// Metrics for one service provider (TRE or DRP user population) in one run.
struct SimReport {
  std::string workload;
  ModelKind model = ModelKind::Dcs;
  WorkloadKind kind = WorkloadKind::Htc;
  std::optional<NodeCount> initial_nodes;  // B, DSP only
  std::optional<double> threshold_ratio;   // R, DSP only

  std::size_t total_jobs = 0;
  std::size_t completed_jobs = 0;   // finished inside the observation window
  std::size_t unfinished_jobs = 0;  // still queued or running when the window closed
  std::size_t unrunnable_jobs = 0;  // demand beyond the attainable size
  std::optional<double> tasks_per_second;
  SimTime makespan = 0;  // last finish - first submit
  SimTime window = 0;    // observation period

  double billed_node_hours = 0;
  double busy_node_hours = 0;
  NodeCount peak_nodes = 0;
  NodeCount adjustment_nodes = 0;
  std::size_t adjustment_events = 0;
  std::size_t rejected_requests = 0;
  std::size_t capped_releases = 0;
  bool starved = false;  // gave up waiting for nodes the bounded pool could not free

  friend bool operator==(const SimReport&, const SimReport&) = default;
};

// Aggregate view of the shared pool.
struct ProviderReport {
  ModelKind model = ModelKind::Dcs;
  double billed_node_hours = 0;
  double busy_node_hours = 0;
  NodeCount peak_nodes = 0;
  NodeCount adjustment_nodes = 0;
  std::size_t adjustment_events = 0;
  SimTime horizon = 0;
  double overhead_seconds = 0;
  double overhead_seconds_per_hour = 0;

  friend bool operator==(const ProviderReport&, const ProviderReport&) = default;
};

inline constexpr double kSetupSecondsPerNode = 15.743;

// Sum of nodes x ceil(duration / quantum) x quantum, in node-hours.
// Throws std::invalid_argument for an interval ending before it starts or a
// non-positive quantum.
double billed_node_hours(std::span<const GrantInterval> intervals, SimTime quantum);

// completed / makespan; absent when nothing completed.
std::optional<double> tasks_per_second(std::size_t completed_tasks, SimTime makespan);

struct Overhead {
  double total_seconds = 0;
  double seconds_per_hour = 0;
};

Overhead adjustment_overhead(NodeCount adjustment_nodes, double per_node_seconds, SimTime horizon);

struct TcoInput {
  double capex = 0;
  double depreciation_months = 1;
  double maintenance_total = 0;       // amortized over the depreciation cycle
  double energy_space_monthly = 0;
  double instance_count = 0;
  double hours_per_month = 720;
  double price_per_instance_hour = 0;
  double inbound_gb_per_month = 0;
  double price_per_gb = 0;
};

// capex / months + maintenance / months + energy and space per month.
double tco_dcs(const TcoInput& input);
// instances x hours x price + inbound GB x price per GB.
double tco_ssp(const TcoInput& input);

// (baseline - value) / baseline x 100. Throws on a zero baseline.
double savings_percent(double value, double baseline);
double savings_vs_baseline(const SimReport& report, const SimReport& baseline);

}  // namespace dcloud
