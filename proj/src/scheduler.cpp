#include "dcloud/scheduler.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcloud {

SchedDecision first_fit(std::span<const QueuedJob> queue, NodeCount free_nodes, SimTime now, FirstFitMode mode) {
  if (free_nodes < 0) throw std::invalid_argument("first_fit: negative free node count");
  SchedDecision d;
  d.still_queued.reserve(queue.size());
  // Free nodes only shrink during a pass, so a job skipped earlier can never
  // fit later in the same pass: one sweep reaches the fixed point.
  for (const auto& job : queue) {
    const bool may_start = mode == FirstFitMode::FixedPoint || d.started.empty();
    if (may_start && job.nodes <= free_nodes) {
      free_nodes -= job.nodes;
      d.started.push_back({job.id, now});
    } else {
      d.still_queued.push_back(job);
    }
  }
  d.free_after = free_nodes;
  return d;
}

SchedDecision fcfs(std::span<const QueuedJob> ready, NodeCount free_nodes, SimTime now) {
  if (free_nodes < 0) throw std::invalid_argument("fcfs: negative free node count");
  SchedDecision d;
  std::size_t i = 0;
  for (; i < ready.size() && ready[i].nodes <= free_nodes; ++i) {
    free_nodes -= ready[i].nodes;
    d.started.push_back({ready[i].id, now});
  }
  d.still_queued.assign(ready.begin() + static_cast<std::ptrdiff_t>(i), ready.end());
  d.free_after = free_nodes;
  return d;
}

WorkflowGraph::WorkflowGraph(const Workload& w)
    : levels_(w.jobs.size(), 0), children_(w.jobs.size()), parents_(w.jobs.size()), nodes_(w.jobs.size()) {
  const auto n = w.jobs.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& j : w.jobs) {
    nodes_[j.id] = j.nodes;
    for (auto dep : j.deps) {
      parents_[j.id].push_back(dep);
      children_[dep].push_back(j.id);
      ++indegree[j.id];
    }
  }
  // Kahn's algorithm; level = longest path from a root.
  std::vector<JobId> frontier;
  for (JobId i = 0; i < n; ++i) {
    if (indegree[i] == 0) frontier.push_back(i);
  }
  std::size_t visited = 0;
  while (!frontier.empty()) {
    std::vector<JobId> next;
    for (auto v : frontier) {
      ++visited;
      for (auto c : children_[v]) {
        levels_[c] = std::max(levels_[c], levels_[v] + 1);
        if (--indegree[c] == 0) next.push_back(c);
      }
    }
    frontier = std::move(next);
  }
  if (visited != n) throw std::invalid_argument("WorkflowGraph: dependency cycle");
  order_.resize(n);
  for (JobId i = 0; i < n; ++i) order_[i] = i;
  std::sort(order_.begin(), order_.end(), [&](JobId a, JobId b) { return fcfs_key(a) < fcfs_key(b); });
}

std::vector<QueuedJob> ready_jobs(const WorkflowGraph& graph, const std::set<JobId>& completed,
                                  const std::set<JobId>& running) {
  std::vector<QueuedJob> out;
  for (auto id : graph.fcfs_order()) {
    if (completed.count(id) != 0 || running.count(id) != 0) continue;
    const auto& parents = graph.parents(id);
    const bool ready = std::all_of(parents.begin(), parents.end(), [&](JobId p) { return completed.count(p) != 0; });
    if (ready) out.push_back({id, graph.nodes(id)});
  }
  return out;
}

}  // namespace dcloud
