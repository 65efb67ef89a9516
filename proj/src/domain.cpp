#include "dcloud/domain.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "dcloud/ledger.hpp"

namespace dcloud {

std::string_view to_string(WorkloadKind kind) {
  return kind == WorkloadKind::Htc ? "htc" : "mtc";
}

std::string_view to_string(Lifecycle state) {
  switch (state) {
    case Lifecycle::Inexistent: return "inexistent";
    case Lifecycle::Planning: return "planning";
    case Lifecycle::Created: return "created";
    case Lifecycle::Running: return "running";
    case Lifecycle::Destroyed: return "destroyed";
  }
  return "?";
}

std::string_view to_string(LeaseCause cause) {
  switch (cause) {
    case LeaseCause::Initial: return "initial";
    case LeaseCause::Fixed: return "fixed";
    case LeaseCause::Dr1: return "dr1";
    case LeaseCause::Dr2: return "dr2";
    case LeaseCause::Release: return "release";
    case LeaseCause::DrpJob: return "drp";
  }
  return "?";
}

NodeCount Workload::max_nodes() const {
  NodeCount m = 0;
  for (const auto& j : jobs) m = std::max(m, j.nodes);
  return m;
}

SimTime Workload::total_runtime() const {
  SimTime total = 0;
  for (const auto& j : jobs) total += j.runtime;
  return total;
}

PolicyParams PolicyParams::htc(NodeCount initial, double ratio) {
  return PolicyParams{initial, ratio, 60, kSecondsPerHour};
}

PolicyParams PolicyParams::mtc(NodeCount initial, double ratio) {
  return PolicyParams{initial, ratio, 3, kSecondsPerHour};
}

void PolicyParams::validate() const {
  if (initial_nodes < 1) throw std::invalid_argument("initial resources B must be >= 1");
  if (!(threshold_ratio > 0.0)) throw std::invalid_argument("threshold ratio R must be > 0");
  if (scan_interval < 1) throw std::invalid_argument("scan interval must be >= 1 s");
  if (idle_check_interval < 1) throw std::invalid_argument("idle check interval must be >= 1 s");
}

std::vector<std::vector<JobId>> find_dependency_cycles(const Workload& workload) {
  // Tarjan's SCC, iterative so deep workflow chains cannot blow the stack.
  const auto n = workload.jobs.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<JobId>> cycles;
  int counter = 0;

  struct Frame {
    std::size_t node;
    std::size_t next_edge;
  };

  auto edges_of = [&](std::size_t v) -> const std::vector<JobId>& { return workload.jobs[v].deps; };

  for (std::size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& f = frames.back();
      const auto& edges = edges_of(f.node);
      if (f.next_edge < edges.size()) {
        const auto w = static_cast<std::size_t>(edges[f.next_edge++]);
        if (w >= n || w == f.node) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.node] = std::min(low[f.node], index[w]);
        }
        continue;
      }
      const auto v = f.node;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
      if (low[v] == index[v]) {
        std::vector<JobId> component;
        std::size_t w = 0;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(static_cast<JobId>(w));
        } while (w != v);
        if (component.size() > 1) {
          std::sort(component.begin(), component.end());
          cycles.push_back(std::move(component));
        }
      }
    }
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::vector<Violation> validate_workload(const Workload& workload,
                                         std::optional<NodeCount> max_attainable) {
  std::vector<Violation> out;
  const auto n = workload.jobs.size();

  // Cycle detection indexes jobs by position, so ids must be dense first.
  bool dense = true;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& job = workload.jobs[i];
    if (job.id != i) {
      dense = false;
      out.push_back({job.id, "non-dense-id", "job at position " + std::to_string(i)});
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& job = workload.jobs[i];
    if (job.runtime <= 0) out.push_back({job.id, "runtime", "runtime must be > 0"});
    if (job.nodes < 1) out.push_back({job.id, "nodes", "node demand must be >= 1"});
    if (job.submit_time < 0) out.push_back({job.id, "submit-time", "submit time must be >= 0"});
    if (i > 0 && job.submit_time < workload.jobs[i - 1].submit_time) {
      out.push_back({job.id, "unsorted", "submit time precedes previous job"});
    }
    if (max_attainable && job.nodes > *max_attainable) {
      out.push_back({job.id, "exceeds-attainable",
                     std::to_string(job.nodes) + " > " + std::to_string(*max_attainable)});
    }
    bool self = false;
    for (auto dep : job.deps) {
      if (dep == job.id) {
        self = true;
      } else if (dep >= n) {
        out.push_back({job.id, "unknown-dependency", "job " + std::to_string(dep)});
      }
    }
    if (self) out.push_back({job.id, "self-dependency", "job depends on itself"});
    if (workload.kind == WorkloadKind::Htc && !job.deps.empty()) {
      out.push_back({job.id, "htc-dependency", "HTC jobs are independent"});
    }
  }

  if (dense) {
    for (const auto& cycle : find_dependency_cycles(workload)) {
      std::string detail;
      for (auto id : cycle) detail += (detail.empty() ? "" : ",") + std::to_string(id);
      out.push_back({cycle.front(), "cycle", detail});
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

void LeaseLedger::append(const LedgerEvent& e) {
  if (!events_.empty() && e.time < events_.back().time) {
    throw std::logic_error("ledger: event at t=" + std::to_string(e.time) + " precedes t=" +
                           std::to_string(events_.back().time));
  }
  auto& tre_total = per_tre_[e.tre];
  if (tre_total + e.delta < 0) {
    throw std::logic_error("ledger: TRE " + std::to_string(e.tre) + " holding would go negative");
  }
  if (e.delta > 0 && open_leases_.count(e.lease) != 0) {
    throw std::logic_error("ledger: lease " + std::to_string(e.lease) + " granted twice");
  }
  auto& lease_total = open_leases_[e.lease];
  if (lease_total + e.delta < 0) {
    throw std::logic_error("ledger: lease " + std::to_string(e.lease) + " overdrawn");
  }
  if (capacity_ && allocated_ + e.delta > *capacity_) {
    throw std::logic_error("ledger: allocation " + std::to_string(allocated_ + e.delta) +
                           " exceeds capacity " + std::to_string(*capacity_));
  }
  tre_total += e.delta;
  lease_total += e.delta;
  allocated_ += e.delta;
  events_.push_back(e);
}

NodeCount LeaseLedger::held_by(TreId tre) const {
  auto it = per_tre_.find(tre);
  return it == per_tre_.end() ? 0 : it->second;
}

NodeCount LeaseLedger::peak() const {
  NodeCount sum = 0, best = 0;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    sum += events_[i].delta;
    // Same-instant releases and grants net out before the peak is sampled.
    if (i + 1 < events_.size() && events_[i + 1].time == events_[i].time) continue;
    best = std::max(best, sum);
  }
  return best;
}

NodeCount LeaseLedger::peak_for(TreId tre) const {
  NodeCount sum = 0, best = 0;
  for (std::size_t i = 0; i < events_.size(); ++i) {
    if (events_[i].tre == tre) sum += events_[i].delta;
    if (i + 1 < events_.size() && events_[i + 1].time == events_[i].time) continue;
    best = std::max(best, sum);
  }
  return best;
}

std::vector<GrantInterval> LeaseLedger::intervals(std::optional<TreId> tre, SimTime horizon) const {
  struct Open {
    SimTime start;
    NodeCount nodes;
  };
  std::map<LeaseId, Open> open;
  std::vector<GrantInterval> out;
  for (const auto& e : events_) {
    if (tre && e.tre != *tre) continue;
    auto it = open.find(e.lease);
    if (e.delta > 0) {
      open.emplace(e.lease, Open{e.time, e.delta});
    } else if (e.delta < 0 && it != open.end()) {
      out.push_back({-e.delta, it->second.start, e.time});
      it->second.nodes += e.delta;
      if (it->second.nodes == 0) open.erase(it);
    }
  }
  for (const auto& [id, o] : open) out.push_back({o.nodes, o.start, std::max(horizon, o.start)});
  std::stable_sort(out.begin(), out.end(), [](const GrantInterval& a, const GrantInterval& b) {
    return std::tie(a.start, a.end) < std::tie(b.start, b.end);
  });
  return out;
}

NodeCount LeaseLedger::adjustment_nodes(std::optional<TreId> tre) const {
  NodeCount total = 0;
  for (const auto& e : events_) {
    if (!tre || e.tre == *tre) total += e.delta < 0 ? -e.delta : e.delta;
  }
  return total;
}

std::size_t LeaseLedger::adjustment_events(std::optional<TreId> tre) const {
  std::size_t total = 0;
  for (const auto& e : events_) {
    if ((!tre || e.tre == *tre) && e.delta != 0) ++total;
  }
  return total;
}

}  // namespace dcloud
