#include "dcloud/models.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

#include "dcloud/policy.hpp"
#include "dcloud/scheduler.hpp"

namespace dcloud {

void ScenarioConfig::validate() const {
  if (lease_quantum < 1) throw std::invalid_argument("lease quantum must be >= 1 s");
  if (setup_cost_per_node < 0) throw std::invalid_argument("setup cost per node must be >= 0");
  if (pool_capacity && *pool_capacity < 1) throw std::invalid_argument("pool capacity must be >= 1");
  for (const auto& e : entries) {
    if (e.start_offset < 0) throw std::invalid_argument(e.name + ": start offset must be >= 0");
    if (e.window && *e.window < 0) throw std::invalid_argument(e.name + ": window must be >= 0");
    switch (e.model) {
      case ModelKind::Dcs:
      case ModelKind::Ssp:
        if (e.fixed_size < 1) throw std::invalid_argument(e.name + ": fixed size must be >= 1");
        break;
      case ModelKind::Dsp:
        e.params.validate();
        break;
      case ModelKind::Drp:
        if (pool_capacity) throw std::invalid_argument(e.name + ": DRP requires an unbounded pool");
        break;
    }
  }
}

ScenarioConfig with_model(const ScenarioConfig& scenario, ModelKind model) {
  ScenarioConfig out = scenario;
  for (auto& e : out.entries) e.model = model;
  return out;
}

namespace {

constexpr SimTime kNever = std::numeric_limits<SimTime>::max();

SimTime ceil_to_quantum(SimTime duration, SimTime quantum) { return (duration + quantum - 1) / quantum * quantum; }

// A node leased by one DRP end user. Paid time runs in whole quanta from the
// lease start; idle nodes go back to the provider when the paid time ends.
struct DrpNode {
  LeaseId lease = 0;
  SimTime lease_start = 0;
  SimTime paid_until = 0;
  bool busy = false;
  bool released = false;
};

struct DrpUser {
  std::vector<DrpNode> nodes;
};

struct EntryState {
  const TreEntry* entry = nullptr;
  TreId id = 0;
  bool is_drp = false;
  bool is_dsp = false;
  SimTime start = 0;
  SimTime window_end = kNever;  // kNever until known for auto windows
  std::optional<NodeCount> max_attainable;

  TreLifecycle lifecycle;
  NodeCount owned = 0;
  NodeCount initial = 0;
  NodeCount busy = 0;
  std::map<LeaseId, NodeCount> open_leases;
  std::map<std::int64_t, IdleObligation> obligations;
  std::int64_t next_obligation = 0;

  std::vector<QueuedJob> queue;  // HTC, arrival order
  std::optional<WorkflowGraph> graph;
  std::vector<std::uint32_t> pending_parents;
  std::vector<bool> arrived;
  std::map<std::uint64_t, QueuedJob> ready;  // MTC, keyed by FCFS order

  std::vector<JobRecord> records;
  std::size_t resolved = 0;
  std::size_t rejected = 0;
  std::size_t capped = 0;
  std::size_t starved = 0;
  bool destroy_pending = false;

  // DRP
  std::vector<DrpUser> users;  // HTC: one per job; MTC: one per workflow
  std::map<LeaseId, std::pair<std::size_t, std::vector<std::size_t>>> lease_nodes;  // lease -> (user, node idx)
  std::vector<std::vector<std::size_t>> job_nodes;  // DRP node indices held by a running job
  SimTime last_expiry = 0;

  const Job& job(JobId j) const { return entry->workload.jobs[j]; }
  bool mtc() const { return entry->workload.kind == WorkloadKind::Mtc; }
  bool running() const { return lifecycle.state() == Lifecycle::Running; }
  std::size_t total() const { return entry->workload.jobs.size(); }
};

class ScenarioRun {
 public:
  ScenarioRun(const ScenarioConfig& sc, const RunOptions& opts)
      : scenario_(sc), options_(opts), sim_(opts.engine), pool_(sc.pool_capacity), ledger_(sc.pool_capacity) {
    states_.resize(sc.entries.size());
    for (std::size_t i = 0; i < sc.entries.size(); ++i) init_entry(static_cast<TreId>(i), sc.entries[i]);
  }

  ScenarioResult run() {
    ScenarioResult result;
    result.events = sim_.run([this](const Event& e, Simulator&) { dispatch(e); });
    finish_reports(result);
    result.ledger = std::move(ledger_);
    return result;
  }

 private:
  void init_entry(TreId id, const TreEntry& entry) {
    auto& st = states_[id];
    st.entry = &entry;
    st.id = id;
    st.is_drp = entry.model == ModelKind::Drp;
    st.is_dsp = entry.model == ModelKind::Dsp;
    st.start = entry.start_offset;
    if (entry.window) st.window_end = entry.start_offset + *entry.window;
    if (entry.model == ModelKind::Dcs || entry.model == ModelKind::Ssp) st.max_attainable = entry.fixed_size;
    if (st.is_dsp) st.max_attainable = scenario_.pool_capacity;

    const auto n = st.total();
    st.records.assign(n, JobRecord{});
    if (st.mtc()) {
      st.graph.emplace(entry.workload);
      st.pending_parents.resize(n);
      for (JobId j = 0; j < n; ++j) st.pending_parents[j] = static_cast<std::uint32_t>(st.graph->parents(j).size());
      st.arrived.assign(n, false);
    }
    if (st.is_drp) {
      st.job_nodes.resize(n);
      st.users.resize(st.mtc() ? 1 : n);
    }

    sim_.schedule({st.start, 0, EventKind::TreCreate, id, kNoJob, 0});
    for (const auto& job : entry.workload.jobs) {
      sim_.schedule({st.start + job.submit_time, 0, EventKind::JobArrival, id, job.id, 0});
    }
    pending_arrivals_ += n;
  }

  // ---- ledger helpers ------------------------------------------------------

  LeaseId grant(EntryState& st, NodeCount nodes, LeaseCause cause) {
    const LeaseId lease = next_lease_++;
    ledger_.append({sim_.now(), st.id, nodes, cause, lease});
    st.open_leases[lease] = nodes;
    last_progress_ = sim_.now();
    return lease;
  }

  void release(EntryState& st, LeaseId lease, NodeCount nodes) {
    if (nodes <= 0) return;
    ledger_.append({sim_.now(), st.id, -nodes, LeaseCause::Release, lease});
    last_progress_ = sim_.now();
    auto it = st.open_leases.find(lease);
    it->second -= nodes;
    if (it->second == 0) st.open_leases.erase(it);
    pool_.release(nodes);
  }

  // ---- dispatch ------------------------------------------------------------

  void dispatch(const Event& e) {
    auto& st = states_[e.tre];
    const NodeCount before = ledger_.allocated();
    switch (e.kind) {
      case EventKind::TreCreate: on_create(st); break;
      case EventKind::JobArrival: on_arrival(st, e.job); break;
      case EventKind::JobFinish: on_finish(st, e.job); break;
      case EventKind::ScanTick: on_scan(st); break;
      case EventKind::IdleCheckTick: on_idle_check(st, e.aux); break;
      case EventKind::LeaseExpiryBoundary: on_lease_expiry(st, static_cast<LeaseId>(e.aux)); break;
      case EventKind::TreDestroy: on_destroy(st); break;
    }
    if (options_.trace) {
      write_trace_line(*options_.trace, {e.time, e.kind, e.tre, e.job, ledger_.allocated() - before});
    }
  }

  void on_create(EntryState& st) {
    if (st.is_drp) {
      if (st.total() == 0 && st.window_end == kNever) st.window_end = st.start;
      return;
    }
    const auto& entry = *st.entry;
    st.lifecycle.apply(LifecycleAction::Apply);
    st.lifecycle.apply(LifecycleAction::Validated);
    st.lifecycle.apply(LifecycleAction::Deployed);
    st.lifecycle.apply(LifecycleAction::Started);

    const NodeCount size = st.is_dsp ? entry.params.initial_nodes : entry.fixed_size;
    if (!std::holds_alternative<Granted>(pool_.request(size))) {
      throw SimulationAbort(entry.name + ": pool cannot provide " + std::to_string(size) + " initial nodes");
    }
    grant(st, size, st.is_dsp ? LeaseCause::Initial : LeaseCause::Fixed);
    st.owned = st.initial = size;

    if (st.mtc()) mark_unrunnable_branches(st);
    const bool ticks = st.is_dsp || (options_.strict_scan && !st.mtc());
    if (ticks) sim_.schedule({sim_.now() + entry.params.scan_interval, 0, EventKind::ScanTick, st.id, kNoJob, 0});
    if (st.window_end != kNever) {
      sim_.schedule({st.window_end, 0, EventKind::TreDestroy, st.id, kNoJob, 0});
    }
    maybe_drained(st);
  }

  // A task whose demand can never be met aborts its whole branch.
  void mark_unrunnable_branches(EntryState& st) {
    if (!st.max_attainable) return;
    std::vector<bool> dead(st.total(), false);
    for (auto id : st.graph->fcfs_order()) {
      bool d = st.job(id).nodes > *st.max_attainable;
      for (auto p : st.graph->parents(id)) d = d || dead[p];
      dead[id] = d;
    }
    for (JobId id = 0; id < st.total(); ++id) {
      if (dead[id]) {
        st.records[id].outcome = JobOutcome::Unrunnable;
        ++st.resolved;
      }
    }
  }

  void on_arrival(EntryState& st, JobId j) {
    --pending_arrivals_;
    last_progress_ = sim_.now();
    auto& rec = st.records[j];
    if (rec.outcome == JobOutcome::Unrunnable) {
      rec.arrival = sim_.now();
      return;
    }
    rec.arrival = sim_.now();
    if (st.is_drp) {
      if (!st.mtc()) {
        rec.ready = sim_.now();
        drp_start(st, j, j);
      } else {
        st.arrived[j] = true;
        if (st.pending_parents[j] == 0) {
          rec.ready = sim_.now();
          drp_start(st, j, 0);
        }
      }
      return;
    }
    if (!st.running()) {
      // Arrived after the TRE was destroyed.
      rec.outcome = JobOutcome::Unfinished;
      rec.finish = sim_.now();
      ++st.resolved;
      return;
    }
    const auto& job = st.job(j);
    if (!st.mtc()) {
      if (st.max_attainable && job.nodes > *st.max_attainable) {
        rec.outcome = JobOutcome::Unrunnable;
        ++st.resolved;
        maybe_drained(st);
        return;
      }
      rec.ready = sim_.now();
      st.queue.push_back({j, job.nodes});
    } else {
      st.arrived[j] = true;
      if (st.pending_parents[j] == 0) make_ready(st, j);
    }
    schedule_pass(st);
  }

  void make_ready(EntryState& st, JobId j) {
    st.records[j].ready = sim_.now();
    st.ready.emplace(st.graph->fcfs_key(j), QueuedJob{j, st.job(j).nodes});
  }

  void start_job(EntryState& st, JobId j) {
    auto& rec = st.records[j];
    rec.start = sim_.now();
    rec.outcome = JobOutcome::Running;
    st.busy += st.job(j).nodes;
    ++running_jobs_;
    last_progress_ = sim_.now();
    sim_.schedule({sim_.now() + st.job(j).runtime, 0, EventKind::JobFinish, st.id, j, 0});
  }

  void schedule_pass(EntryState& st) {
    if (!st.running()) return;
    const NodeCount free = st.owned - st.busy;
    if (!st.mtc()) {
      if (options_.strict_scan) return;  // scheduling happens on scan ticks
      auto d = first_fit(st.queue, free, sim_.now());
      for (const auto& s : d.started) start_job(st, s.job);
      st.queue = std::move(d.still_queued);
    } else {
      std::vector<QueuedJob> ready;
      ready.reserve(st.ready.size());
      for (const auto& [key, q] : st.ready) ready.push_back(q);
      auto d = fcfs(ready, free, sim_.now());
      for (const auto& s : d.started) {
        st.ready.erase(st.graph->fcfs_key(s.job));
        start_job(st, s.job);
      }
    }
  }

  void on_finish(EntryState& st, JobId j) {
    auto& rec = st.records[j];
    if (rec.outcome != JobOutcome::Running) return;  // cut off by TRE destruction
    rec.finish = sim_.now();
    rec.outcome = JobOutcome::Completed;
    ++st.resolved;
    if (st.is_drp) {
      for (auto idx : st.job_nodes[j]) users_of(st, j)[idx].busy = false;
      st.job_nodes[j].clear();
    } else {
      st.busy -= st.job(j).nodes;
      --running_jobs_;
      last_progress_ = sim_.now();
    }
    if (st.mtc()) {
      for (auto c : st.graph->children(j)) {
        if (--st.pending_parents[c] == 0 && st.arrived[c] && st.records[c].outcome == JobOutcome::Pending) {
          if (st.is_drp) {
            st.records[c].ready = sim_.now();
            drp_start(st, c, 0);
          } else {
            make_ready(st, c);
          }
        }
      }
    }
    if (!st.is_drp) {
      schedule_pass(st);
      maybe_drained(st);
    } else if (st.resolved == st.total() && st.window_end == kNever) {
      st.window_end = sim_.now();
    }
  }

  void maybe_drained(EntryState& st) {
    if (st.is_drp || !st.running() || st.destroy_pending) return;
    if (st.entry->window) return;
    if (st.resolved == st.total()) {
      st.destroy_pending = true;
      sim_.schedule({sim_.now(), 0, EventKind::TreDestroy, st.id, kNoJob, 0});
    }
  }

  std::vector<QueuedJob> policy_queue(const EntryState& st) const {
    if (!st.mtc()) return st.queue;
    std::vector<QueuedJob> out;
    out.reserve(st.ready.size());
    for (const auto& [key, q] : st.ready) out.push_back(q);
    return out;
  }

  // With a bounded pool, windowless DSP TREs can each wait for nodes another
  // one holds. Once nothing runs, nothing is due to arrive and the ledger has
  // been still for two idle checks, the waiting TRE gives up.
  bool starved(const EntryState& st) const {
    if (!st.is_dsp || !scenario_.pool_capacity || st.entry->window) return false;
    if (running_jobs_ > 0 || pending_arrivals_ > 0) return false;
    if (st.queue.empty() && st.ready.empty()) return false;
    const auto& params = st.entry->params;
    return sim_.now() - last_progress_ >= 2 * params.idle_check_interval + params.scan_interval;
  }

  void on_scan(EntryState& st) {
    if (!st.running()) return;
    if (starved(st)) {
      ++st.starved;
      on_destroy(st);
      return;
    }
    const auto& params = st.entry->params;
    if (options_.strict_scan && !st.mtc()) {
      auto d = first_fit(st.queue, st.owned - st.busy, sim_.now(), FirstFitMode::OneJob);
      for (const auto& s : d.started) start_job(st, s.job);
      st.queue = std::move(d.still_queued);
    }
    if (st.is_dsp) {
      const auto queue = policy_queue(st);
      if (auto req = scan_queue(queue, st.owned, params.threshold_ratio, st.id)) {
        if (std::holds_alternative<Granted>(pool_.request(req->size))) {
          const LeaseId lease = grant(st, req->size, req->cause);
          st.owned += req->size;
          const auto ob = st.next_obligation++;
          st.obligations[ob] = IdleObligation{req->size, sim_.now() + params.idle_check_interval, lease};
          sim_.schedule({sim_.now() + params.idle_check_interval, 0, EventKind::IdleCheckTick, st.id, kNoJob, ob});
          schedule_pass(st);
        } else {
          ++st.rejected;
        }
      }
    }
    sim_.schedule({sim_.now() + params.scan_interval, 0, EventKind::ScanTick, st.id, kNoJob, 0});
  }

  void on_idle_check(EntryState& st, std::int64_t ob_id) {
    if (!st.running()) return;
    auto it = st.obligations.find(ob_id);
    if (it == st.obligations.end()) return;
    auto& ob = it->second;
    const auto r = idle_check(st.owned, st.busy, st.initial, ob);
    if (!r.release) {
      ob.due = sim_.now() + st.entry->params.idle_check_interval;
      sim_.schedule({ob.due, 0, EventKind::IdleCheckTick, st.id, kNoJob, ob_id});
      return;
    }
    if (r.capped) ++st.capped;
    const auto lease_it = st.open_leases.find(ob.lease);
    const NodeCount on_lease = lease_it == st.open_leases.end() ? 0 : lease_it->second;
    const NodeCount n = std::min(*r.release, on_lease);
    release(st, ob.lease, n);
    st.owned -= n;
    st.obligations.erase(it);
  }

  void on_destroy(EntryState& st) {
    if (!st.running()) return;
    const SimTime now = sim_.now();
    for (JobId j = 0; j < st.total(); ++j) {
      auto& rec = st.records[j];
      if (rec.outcome == JobOutcome::Running) --running_jobs_;
      if (rec.outcome == JobOutcome::Running || (rec.outcome == JobOutcome::Pending && rec.arrival >= 0)) {
        rec.outcome = JobOutcome::Unfinished;
        rec.finish = now;
        ++st.resolved;
      }
    }
    st.busy = 0;
    st.queue.clear();
    st.ready.clear();
    const auto leases = st.open_leases;
    for (const auto& [lease, nodes] : leases) release(st, lease, nodes);
    st.owned = 0;
    st.obligations.clear();
    st.lifecycle.apply(LifecycleAction::Destroy);
    st.window_end = now;
  }

  // ---- DRP -----------------------------------------------------------------

  std::vector<DrpNode>& users_of(EntryState& st, JobId j) { return st.users[st.mtc() ? 0 : j].nodes; }

  void drp_start(EntryState& st, JobId j, std::size_t user_index) {
    const auto& job = st.job(j);
    const SimTime now = sim_.now();
    const SimTime needed_until = now + job.runtime;
    const SimTime q = scenario_.lease_quantum;
    auto& nodes = st.users[user_index].nodes;
    auto& held = st.job_nodes[j];

    // Reuse idle nodes this user has already paid for.
    for (std::size_t i = 0; i < nodes.size() && static_cast<NodeCount>(held.size()) < job.nodes; ++i) {
      auto& node = nodes[i];
      if (!node.busy && !node.released && node.paid_until > now) held.push_back(i);
    }
    const NodeCount fresh = job.nodes - static_cast<NodeCount>(held.size());
    if (fresh > 0) {
      pool_.request(fresh);
      const LeaseId lease = grant(st, fresh, LeaseCause::DrpJob);
      auto& members = st.lease_nodes[lease];
      members.first = user_index;
      for (NodeCount k = 0; k < fresh; ++k) {
        members.second.push_back(nodes.size());
        held.push_back(nodes.size());
        nodes.push_back(DrpNode{lease, now, now, false, false});
      }
    }
    for (auto idx : held) {
      auto& node = nodes[idx];
      node.busy = true;
      if (node.paid_until < needed_until) {
        node.paid_until = node.lease_start + ceil_to_quantum(needed_until - node.lease_start, q);
        sim_.schedule({node.paid_until, 0, EventKind::LeaseExpiryBoundary, st.id, kNoJob,
                       static_cast<std::int64_t>(node.lease)});
      }
    }
    auto& rec = st.records[j];
    rec.start = now;
    rec.outcome = JobOutcome::Running;
    sim_.schedule({needed_until, 0, EventKind::JobFinish, st.id, j, 0});
  }

  void on_lease_expiry(EntryState& st, LeaseId lease) {
    auto it = st.lease_nodes.find(lease);
    if (it == st.lease_nodes.end()) return;
    auto& nodes = st.users[it->second.first].nodes;
    NodeCount count = 0;
    for (auto idx : it->second.second) {
      auto& node = nodes[idx];
      if (!node.released && !node.busy && node.paid_until == sim_.now()) {
        node.released = true;
        ++count;
      }
    }
    if (count > 0) {
      release(st, lease, count);
      st.last_expiry = std::max(st.last_expiry, sim_.now());
    }
  }

  // ---- reports ---------------------------------------------------------------

  void finish_reports(ScenarioResult& result) {
    SimTime horizon = 0;
    for (auto& st : states_) {
      const auto& entry = *st.entry;
      SimReport r;
      r.workload = entry.name;
      r.model = entry.model;
      r.kind = entry.workload.kind;
      if (st.is_dsp) {
        r.initial_nodes = entry.params.initial_nodes;
        r.threshold_ratio = entry.params.threshold_ratio;
      }
      r.total_jobs = st.total();
      const SimTime window_end = st.window_end == kNever ? st.start : st.window_end;
      SimTime first_submit = kNever, last_finish = st.start;
      for (JobId j = 0; j < st.total(); ++j) {
        const auto& rec = st.records[j];
        const auto& job = st.job(j);
        first_submit = std::min(first_submit, st.start + job.submit_time);
        switch (rec.outcome) {
          case JobOutcome::Completed:
            if (rec.finish <= window_end) {
              ++r.completed_jobs;
              last_finish = std::max(last_finish, rec.finish);
            } else {
              ++r.unfinished_jobs;
            }
            break;
          case JobOutcome::Unrunnable: ++r.unrunnable_jobs; break;
          default: ++r.unfinished_jobs; break;
        }
        if (rec.start >= 0 && rec.finish >= rec.start) {
          r.busy_node_hours += static_cast<double>(job.nodes * (rec.finish - rec.start)) / kSecondsPerHour;
        }
      }
      if (first_submit == kNever) first_submit = st.start;
      r.makespan = r.completed_jobs > 0 ? last_finish - first_submit : 0;
      if (entry.workload.kind == WorkloadKind::Mtc) r.tasks_per_second = tasks_per_second(r.completed_jobs, r.makespan);
      r.window = window_end - st.start;

      const auto intervals = ledger_.intervals(st.id, window_end);
      r.billed_node_hours = billed_node_hours(intervals, scenario_.lease_quantum);
      r.peak_nodes = ledger_.peak_for(st.id);
      r.adjustment_nodes = ledger_.adjustment_nodes(st.id);
      r.adjustment_events = ledger_.adjustment_events(st.id);
      r.rejected_requests = st.rejected;
      r.capped_releases = st.capped;
      r.starved = st.starved > 0;

      const SimTime entry_horizon = st.is_drp && !entry.window ? std::max(window_end, st.last_expiry) : window_end;
      horizon = std::max(horizon, entry_horizon);
      result.jobs.push_back(st.records);
      result.reports.push_back(std::move(r));
    }

    auto& p = result.provider;
    p.model = states_.empty() ? ModelKind::Dcs : states_.front().entry->model;
    for (const auto& r : result.reports) {
      p.billed_node_hours += r.billed_node_hours;
      p.busy_node_hours += r.busy_node_hours;
    }
    p.peak_nodes = ledger_.peak();
    p.adjustment_nodes = ledger_.adjustment_nodes();
    p.adjustment_events = ledger_.adjustment_events();
    p.horizon = horizon;
    const auto o = adjustment_overhead(p.adjustment_nodes, scenario_.setup_cost_per_node, horizon);
    p.overhead_seconds = o.total_seconds;
    p.overhead_seconds_per_hour = o.seconds_per_hour;
  }

  const ScenarioConfig& scenario_;
  RunOptions options_;
  Simulator sim_;
  ProvisionPool pool_;
  LeaseLedger ledger_;
  std::vector<EntryState> states_;
  LeaseId next_lease_ = 1;
  std::size_t pending_arrivals_ = 0;
  std::size_t running_jobs_ = 0;
  SimTime last_progress_ = 0;
};

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& scenario, const RunOptions& options) {
  scenario.validate();
  ScenarioRun run(scenario, options);
  return run.run();
}

SimReport run_fixed(const Workload& workload, NodeCount size, Ownership owned, std::optional<SimTime> window,
                    SimTime quantum, const RunOptions& options) {
  if (size < 1) throw std::invalid_argument("run_fixed: size must be >= 1");
  ScenarioConfig sc;
  sc.name = owned == Ownership::Local ? "dcs" : "ssp";
  sc.lease_quantum = quantum;
  TreEntry e;
  e.name = workload.source.name;
  e.workload = workload;
  e.model = owned == Ownership::Local ? ModelKind::Dcs : ModelKind::Ssp;
  e.fixed_size = size;
  e.window = window;
  sc.entries.push_back(std::move(e));
  return run_scenario(sc, options).reports.front();
}

SimReport run_drp(const Workload& workload, std::optional<SimTime> window, SimTime quantum,
                  const RunOptions& options) {
  ScenarioConfig sc;
  sc.name = "drp";
  sc.lease_quantum = quantum;
  TreEntry e;
  e.name = workload.source.name;
  e.workload = workload;
  e.model = ModelKind::Drp;
  e.window = window;
  sc.entries.push_back(std::move(e));
  return run_scenario(sc, options).reports.front();
}

ScenarioResult run_dsp(const ScenarioConfig& scenario, const RunOptions& options) {
  for (const auto& e : scenario.entries) {
    if (e.model != ModelKind::Dsp) throw std::invalid_argument("run_dsp: entry " + e.name + " is not DSP");
  }
  return run_scenario(scenario, options);
}

}  // namespace dcloud
