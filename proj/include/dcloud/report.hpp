#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>

#include "dcloud/metrics.hpp"

namespace dcloud {

inline constexpr const char* kReportFormatVersion = "dcloud-report v1";

struct ReportRow {
  std::string scenario;
  SimReport report;
};

struct ProviderRow {
  std::string scenario;
  ProviderReport report;
};

struct SweepRow {
  std::string workload;
  NodeCount initial_nodes = 0;
  double threshold_ratio = 0;
  std::optional<SimReport> report;
  std::string error;  // non-empty when this grid point failed
};

// Fixed-precision decimal; "inf" for infinities, empty for nullopt.
std::string format_decimal(std::optional<double> value, int precision = 3);

// One row per run plus provider rows. The savings column is relative to the
// DCS row of the same scenario and workload; empty when there is none.
// Throws std::invalid_argument when there is nothing to emit.
void write_runs_csv(std::ostream& out, std::span<const ReportRow> runs, std::span<const ProviderRow> providers = {});
void write_runs_table(std::ostream& out, std::span<const ReportRow> runs, std::span<const ProviderRow> providers = {});

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace dcloud
