#include "dcloud/report.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace dcloud {

std::string format_decimal(std::optional<double> value, int precision) {
  if (!value) return "";
  if (std::isinf(*value)) return *value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, *value);
  std::string s(buf);
  if (s == "-0" || s.rfind("-0.", 0) == 0) {
    // Avoid "-0.000" for tiny negatives so output is platform-stable.
    if (std::stod(s) == 0.0) s.erase(0, 1);
  }
  return s;
}

namespace {

std::string format_ratio(std::optional<double> r) {
  if (!r) return "";
  if (std::isinf(*r)) return "inf";
  return format_decimal(*r, 2);
}

const SimReport* find_baseline(std::span<const ReportRow> runs, const ReportRow& row) {
  for (const auto& other : runs) {
    if (other.scenario == row.scenario && other.report.workload == row.report.workload &&
        other.report.model == ModelKind::Dcs) {
      return &other.report;
    }
  }
  return nullptr;
}

std::optional<double> savings_for(std::span<const ReportRow> runs, const ReportRow& row) {
  const auto* base = find_baseline(runs, row);
  if (!base || base->billed_node_hours == 0) return std::nullopt;
  return savings_vs_baseline(row.report, *base);
}

std::optional<double> provider_savings(std::span<const ProviderRow> providers, const ProviderRow& row) {
  for (const auto& other : providers) {
    if (other.scenario == row.scenario && other.report.model == ModelKind::Dcs && other.report.billed_node_hours > 0) {
      return savings_percent(row.report.billed_node_hours, other.report.billed_node_hours);
    }
  }
  return std::nullopt;
}

constexpr const char* kRunColumns =
    "scenario,model,workload,kind,B,R,total_jobs,completed_jobs,unfinished_jobs,unrunnable_jobs,"
    "tasks_per_second,makespan_s,billed_node_hours,busy_node_hours,peak_nodes,adjustment_nodes,"
    "adjustment_events,rejected_requests,overhead_s_per_hour,savings_pct";

}  // namespace

void write_runs_csv(std::ostream& out, std::span<const ReportRow> runs, std::span<const ProviderRow> providers) {
  if (runs.empty() && providers.empty()) throw std::invalid_argument("write_runs_csv: no runs to emit");
  out << "# " << kReportFormatVersion << '\n' << kRunColumns << '\n';
  for (const auto& row : runs) {
    const auto& r = row.report;
    out << row.scenario << ',' << to_string(r.model) << ',' << r.workload << ',' << to_string(r.kind) << ','
        << (r.initial_nodes ? std::to_string(*r.initial_nodes) : "") << ',' << format_ratio(r.threshold_ratio) << ','
        << r.total_jobs << ',' << r.completed_jobs << ',' << r.unfinished_jobs << ',' << r.unrunnable_jobs << ','
        << format_decimal(r.tasks_per_second, 4) << ',' << r.makespan << ','
        << format_decimal(r.billed_node_hours) << ',' << format_decimal(r.busy_node_hours) << ',' << r.peak_nodes
        << ',' << r.adjustment_nodes << ',' << r.adjustment_events << ',' << r.rejected_requests << ",,"
        << format_decimal(savings_for(runs, row), 1) << '\n';
  }
  for (const auto& row : providers) {
    const auto& p = row.report;
    out << row.scenario << ',' << to_string(p.model) << ",(provider),,,,,,,,," << p.horizon << ','
        << format_decimal(p.billed_node_hours) << ',' << format_decimal(p.busy_node_hours) << ',' << p.peak_nodes << ','
        << p.adjustment_nodes << ',' << p.adjustment_events << ",," << format_decimal(p.overhead_seconds_per_hour, 1)
        << ',' << format_decimal(provider_savings(providers, row), 1) << '\n';
  }
}

void write_runs_table(std::ostream& out, std::span<const ReportRow> runs, std::span<const ProviderRow> providers) {
  if (runs.empty() && providers.empty()) throw std::invalid_argument("write_runs_table: no runs to emit");
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"scenario", "model", "workload", "completed", "tasks/s", "node*hour", "saved", "peak", "adjusted"});
  for (const auto& row : runs) {
    const auto& r = row.report;
    const auto saved = savings_for(runs, row);
    cells.push_back({row.scenario, std::string(to_string(r.model)), r.workload, std::to_string(r.completed_jobs),
                     r.tasks_per_second ? format_decimal(r.tasks_per_second, 2) : "-",
                     format_decimal(r.billed_node_hours, 1), saved ? format_decimal(saved, 1) + "%" : "/",
                     std::to_string(r.peak_nodes), std::to_string(r.adjustment_nodes)});
  }
  for (const auto& row : providers) {
    const auto& p = row.report;
    const auto saved = provider_savings(providers, row);
    cells.push_back({row.scenario, std::string(to_string(p.model)), "(provider)", "-", "-",
                     format_decimal(p.billed_node_hours, 1), saved ? format_decimal(saved, 1) + "%" : "/",
                     std::to_string(p.peak_nodes), std::to_string(p.adjustment_nodes)});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  }
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << "  ";
      if (c < 3) {
        out << std::left << std::setw(static_cast<int>(width[c])) << line[c];
      } else {
        out << std::right << std::setw(static_cast<int>(width[c])) << line[c];
      }
    }
    out << '\n';
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << "# " << kReportFormatVersion << " sweep\n";
  out << "workload,B,R,billed_node_hours,completed_jobs,tasks_per_second,peak_nodes,adjustment_nodes,"
         "rejected_requests,error\n";
  for (const auto& row : rows) {
    out << row.workload << ',' << row.initial_nodes << ',' << format_ratio(row.threshold_ratio) << ',';
    if (row.report) {
      const auto& r = *row.report;
      out << format_decimal(r.billed_node_hours) << ',' << r.completed_jobs << ','
          << format_decimal(r.tasks_per_second, 4) << ',' << r.peak_nodes << ',' << r.adjustment_nodes << ','
          << r.rejected_requests << ',';
    } else {
      out << ",,,,,,";
    }
    // Errors are free text; keep the CSV single-line and comma-free.
    std::string err = row.error;
    for (auto& c : err) {
      if (c == ',' || c == '\n') c = ';';
    }
    out << err << '\n';
  }
}

}  // namespace dcloud
