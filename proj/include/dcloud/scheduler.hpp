#pragma once

#include <set>
#include <span>
#include <vector>

#include "dcloud/domain.hpp"

namespace dcloud {

struct QueuedJob {
  JobId id = 0;
  NodeCount nodes = 1;

  friend bool operator==(const QueuedJob&, const QueuedJob&) = default;
};

struct SchedDecision {
  struct Start {
    JobId job;
    SimTime start_time;
    friend bool operator==(const Start&, const Start&) = default;
  };
  std::vector<Start> started;
  std::vector<QueuedJob> still_queued;
  NodeCount free_after = 0;
};

enum class FirstFitMode {
  FixedPoint,  // keep starting jobs until nothing in the queue fits
  OneJob,      // start at most one job per invocation
};

// Scans the queue in arrival order and starts every job whose demand fits the
// remaining free nodes. Unstarted jobs keep their relative order.
SchedDecision first_fit(std::span<const QueuedJob> queue, NodeCount free_nodes, SimTime now = 0,
                        FirstFitMode mode = FirstFitMode::FixedPoint);

// Starts jobs strictly from the head; the first job that does not fit blocks
// everything behind it.
SchedDecision fcfs(std::span<const QueuedJob> ready, NodeCount free_nodes, SimTime now = 0);

// Static view of a workflow: topological levels and the FCFS arrival order
// (level, then declaration order).
class WorkflowGraph {
 public:
  explicit WorkflowGraph(const Workload& workflow);

  std::size_t size() const { return levels_.size(); }
  std::uint32_t level(JobId id) const { return levels_[id]; }
  const std::vector<JobId>& children(JobId id) const { return children_[id]; }
  const std::vector<JobId>& parents(JobId id) const { return parents_[id]; }
  NodeCount nodes(JobId id) const { return nodes_[id]; }
  // All jobs sorted into FCFS arrival order.
  const std::vector<JobId>& fcfs_order() const { return order_; }
  // Key that orders jobs by FCFS arrival.
  std::uint64_t fcfs_key(JobId id) const { return (std::uint64_t{levels_[id]} << 32) | id; }

 private:
  std::vector<std::uint32_t> levels_;
  std::vector<std::vector<JobId>> children_;
  std::vector<std::vector<JobId>> parents_;
  std::vector<NodeCount> nodes_;
  std::vector<JobId> order_;
};

// Jobs that are neither completed nor running and whose parents have all
// completed, in FCFS order.
std::vector<QueuedJob> ready_jobs(const WorkflowGraph& graph, const std::set<JobId>& completed,
                                  const std::set<JobId>& running = {});

}  // namespace dcloud
