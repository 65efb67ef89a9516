#include "dcloud/metrics.hpp"

#include <stdexcept>

namespace dcloud {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Dcs: return "DCS";
    case ModelKind::Ssp: return "SSP";
    case ModelKind::Drp: return "DRP";
    case ModelKind::Dsp: return "DSP";
  }
  return "?";
}

std::optional<ModelKind> parse_model_kind(std::string_view text) {
  std::string upper(text);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (upper == "DCS") return ModelKind::Dcs;
  if (upper == "SSP") return ModelKind::Ssp;
  if (upper == "DRP") return ModelKind::Drp;
  if (upper == "DSP") return ModelKind::Dsp;
  return std::nullopt;
}

double billed_node_hours(std::span<const GrantInterval> intervals, SimTime quantum) {
  if (quantum < 1) throw std::invalid_argument("billed_node_hours: quantum must be >= 1 s");
  // Integer node-seconds first so the result does not depend on summation order.
  std::int64_t node_seconds = 0;
  for (const auto& iv : intervals) {
    if (iv.end < iv.start) throw std::invalid_argument("billed_node_hours: interval ends before it starts");
    const SimTime units = (iv.end - iv.start + quantum - 1) / quantum;
    node_seconds += iv.nodes * units * quantum;
  }
  return static_cast<double>(node_seconds) / static_cast<double>(kSecondsPerHour);
}

std::optional<double> tasks_per_second(std::size_t completed_tasks, SimTime makespan) {
  if (completed_tasks == 0 || makespan <= 0) return std::nullopt;
  return static_cast<double>(completed_tasks) / static_cast<double>(makespan);
}

Overhead adjustment_overhead(NodeCount adjustment_nodes, double per_node_seconds, SimTime horizon) {
  if (per_node_seconds < 0) throw std::invalid_argument("adjustment_overhead: negative per-node cost");
  Overhead o;
  o.total_seconds = static_cast<double>(adjustment_nodes) * per_node_seconds;
  if (horizon > 0) o.seconds_per_hour = o.total_seconds / (static_cast<double>(horizon) / kSecondsPerHour);
  return o;
}

double tco_dcs(const TcoInput& in) {
  if (in.depreciation_months <= 0) throw std::invalid_argument("tco_dcs: depreciation period must be > 0");
  return in.capex / in.depreciation_months + in.maintenance_total / in.depreciation_months + in.energy_space_monthly;
}

double tco_ssp(const TcoInput& in) {
  return in.instance_count * in.hours_per_month * in.price_per_instance_hour + in.inbound_gb_per_month * in.price_per_gb;
}

double savings_percent(double value, double baseline) {
  if (baseline == 0) throw std::invalid_argument("savings: baseline consumption is zero");
  return (baseline - value) / baseline * 100.0;
}

double savings_vs_baseline(const SimReport& report, const SimReport& baseline) {
  return savings_percent(report.billed_node_hours, baseline.billed_node_hours);
}

}  // namespace dcloud
