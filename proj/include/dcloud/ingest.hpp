#pragma once

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcloud/domain.hpp"

namespace dcloud {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

struct TraceSlice {
  SimTime start_offset = 0;
  SimTime duration = 14 * 24 * kSecondsPerHour;
};

// Standard Workload Format (Parallel Workloads Archive). Field 8 (requested
// processors) is the demand, falling back to field 5 when it is -1. Lines with
// no usable runtime or processor count are skipped and counted. The original
// machine scale is taken from a "; MaxProcs:" or "; MaxNodes:" header, else
// from the largest job.
Workload parse_swf(std::istream& in, std::string name = "swf");

// Debug writer; emits the 18-field layout with -1 for fields the simulator
// does not track.
void write_swf(std::ostream& out, const Workload& workload);

// Line format: `TASK <id> <runtime_seconds> <nodes>` and `EDGE <parent> <child>`,
// '#' comments. Every task is submitted at t = 0.
Workload parse_dag(std::istream& in, std::string name = "dag");

void write_dag(std::ostream& out, const Workload& workload);

// Rescales node demands by target_nodes / original_scale, rounding half-up with
// a floor of one node.
Workload scale_trace(const Workload& workload, NodeCount target_nodes);

// Keeps jobs submitted in [start, start + duration) and rebases submit times to
// the slice start. Job ids are re-densified.
Workload slice_trace(const Workload& workload, const TraceSlice& slice);

Workload load_workload_file(const std::string& path, WorkloadKind kind);

}  // namespace dcloud
