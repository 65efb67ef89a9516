#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dcloud {

// Simulated seconds. The clock is integral so node-hour accounting is exact.
using SimTime = std::int64_t;
using NodeCount = std::int64_t;
using JobId = std::uint32_t;
using TreId = std::uint32_t;
using LeaseId = std::uint64_t;

inline constexpr SimTime kSecondsPerHour = 3600;
inline constexpr JobId kNoJob = std::numeric_limits<JobId>::max();

enum class WorkloadKind { Htc, Mtc };

std::string_view to_string(WorkloadKind kind);

struct Job {
  JobId id = 0;
  SimTime submit_time = 0;
  SimTime runtime = 0;
  NodeCount nodes = 1;
  std::vector<JobId> deps;
  std::optional<std::uint32_t> workflow_id;
  // Identifier as it appeared in the source file (SWF job number, DAG task name).
  std::string trace_id;
};

struct TraceSource {
  std::string name;
  NodeCount original_scale = 0;
  double scale_factor = 1.0;
};

struct Workload {
  WorkloadKind kind = WorkloadKind::Htc;
  std::vector<Job> jobs;
  TraceSource source;
  // Data lines dropped by the parser (missing runtime or processor count).
  std::size_t skipped_lines = 0;

  NodeCount max_nodes() const;
  SimTime total_runtime() const;
};

struct PolicyParams {
  NodeCount initial_nodes = 1;                 // B
  double threshold_ratio = 1.0;                // R, may be +inf
  SimTime scan_interval = 60;
  SimTime idle_check_interval = kSecondsPerHour;

  static PolicyParams htc(NodeCount initial, double ratio);
  static PolicyParams mtc(NodeCount initial, double ratio);

  // Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

enum class Lifecycle { Inexistent, Planning, Created, Running, Destroyed };

std::string_view to_string(Lifecycle state);

struct Violation {
  JobId job = kNoJob;
  std::string rule;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
  friend auto operator<=>(const Violation&, const Violation&) = default;
};

// Checks every Job/Workload invariant. Violations are data; the function never
// throws. When max_attainable is given, jobs larger than it are reported under
// "exceeds-attainable" (a warning-class rule).
std::vector<Violation> validate_workload(const Workload& workload,
                                         std::optional<NodeCount> max_attainable = {});

// Jobs on a dependency cycle, one group per strongly connected component of
// size > 1. Self-loops are reported separately by validate_workload.
std::vector<std::vector<JobId>> find_dependency_cycles(const Workload& workload);

}  // namespace dcloud
