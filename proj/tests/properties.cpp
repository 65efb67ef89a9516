#include "properties.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "dcloud/models.hpp"
#include "dcloud/policy.hpp"
#include "dcloud/report.hpp"
#include "dcloud/scheduler.hpp"
#include "dcloud/synth.hpp"

using namespace dcloud;

namespace props {

namespace {

Workload random_htc(Rng& rng, std::size_t max_jobs, NodeCount max_nodes, SimTime span) {
  Workload w;
  w.source.name = "rand-htc";
  const auto n = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(max_jobs)));
  for (std::size_t i = 0; i < n; ++i) {
    Job j;
    j.submit_time = rng.uniform_int(0, span);
    j.runtime = rng.uniform_int(1, 3 * kSecondsPerHour);
    j.nodes = rng.uniform_int(1, max_nodes);
    w.jobs.push_back(j);
  }
  std::stable_sort(w.jobs.begin(), w.jobs.end(), [](const Job& a, const Job& b) { return a.submit_time < b.submit_time; });
  for (std::size_t i = 0; i < w.jobs.size(); ++i) w.jobs[i].id = static_cast<JobId>(i);
  return w;
}

Workload random_dag(Rng& rng, std::size_t max_tasks, NodeCount max_nodes) {
  Workload w;
  w.kind = WorkloadKind::Mtc;
  w.source.name = "rand-dag";
  const auto n = static_cast<std::size_t>(rng.uniform_int(1, static_cast<std::int64_t>(max_tasks)));
  const double density = rng.uniform() * 0.3;
  for (std::size_t i = 0; i < n; ++i) {
    Job j;
    j.id = static_cast<JobId>(i);
    j.runtime = rng.uniform_int(1, 120);
    j.nodes = rng.uniform_int(1, max_nodes);
    j.workflow_id = 0;
    // Edges only from lower ids keep the graph acyclic.
    for (std::size_t p = 0; p < i; ++p) {
      if (rng.uniform() < density) j.deps.push_back(static_cast<JobId>(p));
    }
    w.jobs.push_back(j);
  }
  return w;
}

ModelKind random_model(Rng& rng) {
  return static_cast<ModelKind>(rng.uniform_int(0, 3));
}

ScenarioConfig random_scenario(Rng& rng) {
  ScenarioConfig sc;
  sc.name = "rand";
  const auto entries = rng.uniform_int(1, 3);
  const ModelKind model = random_model(rng);
  NodeCount floor = 0;
  for (std::int64_t e = 0; e < entries; ++e) {
    TreEntry t;
    t.name = "t" + std::to_string(e);
    const bool mtc = rng.uniform() < 0.3;
    t.workload = mtc ? random_dag(rng, 40, 4) : random_htc(rng, 40, 16, 6 * kSecondsPerHour);
    t.model = model;
    t.fixed_size = rng.uniform_int(1, 20);
    const NodeCount b = rng.uniform_int(1, 12);
    const double r = std::array<double, 5>{0.5, 1.0, 1.5, 4.0, std::numeric_limits<double>::infinity()}[
        static_cast<std::size_t>(rng.uniform_int(0, 4))];
    t.params = mtc ? PolicyParams::mtc(b, r) : PolicyParams::htc(b, r);
    t.start_offset = rng.uniform_int(0, 2) * 600;
    if (!mtc && rng.uniform() < 0.7) t.window = rng.uniform_int(1, 8) * kSecondsPerHour;
    floor += model == ModelKind::Dsp ? b : t.fixed_size;
    sc.entries.push_back(std::move(t));
  }
  if (model != ModelKind::Drp && rng.uniform() < 0.6) {
    // Staggered starts could find the pool taken by earlier growth, which aborts.
    sc.pool_capacity = floor + rng.uniform_int(0, 40);
    for (auto& t : sc.entries) t.start_offset = 0;
  }
  if (rng.uniform() < 0.2) sc.lease_quantum = 600;
  return sc;
}

// Busy nodes never exceed held nodes for any TRE, checked after every instant.
void check_conservation(const ScenarioConfig& sc, const ScenarioResult& res, Outcome& out) {
  const auto& events = res.ledger.events();
  std::map<TreId, NodeCount> held;
  NodeCount total = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    held[events[i].tre] += events[i].delta;
    total += events[i].delta;
    if (held[events[i].tre] < 0) out.fail(sc.name + ": negative holding");
    if (sc.pool_capacity && total > *sc.pool_capacity) out.fail(sc.name + ": capacity exceeded");
  }
  if (sc.entries.front().model == ModelKind::Drp) return;  // DRP leases are per job, not a partition

  for (std::size_t e = 0; e < sc.entries.size(); ++e) {
    // (time, order, tre delta) where order puts releases/finishes before grants/starts.
    std::vector<std::pair<SimTime, NodeCount>> held_delta, busy_delta;
    for (const auto& ev : events) {
      if (ev.tre == e) held_delta.push_back({ev.time, ev.delta});
    }
    const auto& jobs = sc.entries[e].workload.jobs;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      const auto& rec = res.jobs[e][j];
      if (rec.start < 0) continue;
      busy_delta.push_back({rec.start, jobs[j].nodes});
      busy_delta.push_back({rec.finish, -jobs[j].nodes});
    }
    std::vector<SimTime> instants;
    for (auto& [t, d] : held_delta) instants.push_back(t);
    for (auto& [t, d] : busy_delta) instants.push_back(t);
    std::sort(instants.begin(), instants.end());
    instants.erase(std::unique(instants.begin(), instants.end()), instants.end());
    std::sort(held_delta.begin(), held_delta.end());
    std::sort(busy_delta.begin(), busy_delta.end());
    NodeCount h = 0, b = 0;
    std::size_t hi = 0, bi = 0;
    for (auto t : instants) {
      while (hi < held_delta.size() && held_delta[hi].first <= t) h += held_delta[hi++].second;
      while (bi < busy_delta.size() && busy_delta[bi].first <= t) b += busy_delta[bi++].second;
      if (b > h) {
        out.fail(sc.name + " entry " + std::to_string(e) + ": busy " + std::to_string(b) + " > held " +
                 std::to_string(h) + " at t=" + std::to_string(t));
        break;
      }
    }
  }
  for (std::size_t e = 0; e < sc.entries.size(); ++e) {
    for (const auto& rec : res.jobs[e]) {
      if (rec.outcome == JobOutcome::Pending || rec.outcome == JobOutcome::Running) {
        out.fail(sc.name + ": job left without a terminal outcome");
      }
    }
  }
}

}  // namespace

Outcome capacity_conservation(std::size_t scenarios, std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (std::size_t i = 0; i < scenarios; ++i) {
    auto sc = random_scenario(rng);
    sc.name = "scenario " + std::to_string(i);
    ++out.cases;
    try {
      check_conservation(sc, run_scenario(sc), out);
    } catch (const std::exception& e) {
      out.fail(sc.name + ": " + e.what());
    }
  }
  return out;
}

Outcome dependency_ordering(std::size_t dags, std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (std::size_t i = 0; i < dags; ++i) {
    ScenarioConfig sc;
    TreEntry t;
    t.name = "dag";
    t.workload = random_dag(rng, 60, 6);
    t.model = random_model(rng);
    t.fixed_size = rng.uniform_int(1, 10);
    t.params = PolicyParams::mtc(rng.uniform_int(1, 6), std::array<double, 3>{1.0, 2.0, 8.0}[i % 3]);
    sc.entries = {t};
    ++out.cases;
    try {
      const auto res = run_scenario(sc);
      const auto& rec = res.jobs[0];
      for (const auto& job : t.workload.jobs) {
        if (rec[job.id].start < 0) continue;
        for (auto p : job.deps) {
          if (rec[p].outcome != JobOutcome::Completed || rec[p].finish > rec[job.id].start) {
            out.fail("dag " + std::to_string(i) + ": job " + std::to_string(job.id) + " started before parent " +
                     std::to_string(p));
          }
        }
      }
    } catch (const std::exception& e) {
      out.fail("dag " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

Outcome first_fit_vs_brute_force() {
  Outcome out;
  std::vector<QueuedJob> queue;
  for (std::size_t n = 0; n <= 8; ++n) {
    std::size_t combos = 1;
    for (std::size_t i = 0; i < n; ++i) combos *= 4;
    queue.resize(n);
    for (std::size_t c = 0; c < combos; ++c) {
      std::size_t x = c;
      for (std::size_t i = 0; i < n; ++i) {
        queue[i] = {static_cast<JobId>(i), static_cast<NodeCount>(x % 4 + 1)};
        x /= 4;
      }
      for (NodeCount free = 0; free <= 8; ++free) {
        ++out.cases;
        // Reference: the lexicographically greatest feasible subset in arrival
        // order, by enumeration of all subsets.
        std::uint32_t best = 0;
        bool found = false;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
          NodeCount used = 0;
          for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) used += queue[i].nodes;
          }
          if (used > free) continue;
          auto rank = [&](std::uint32_t m) {
            std::uint32_t r = 0;
            for (std::size_t i = 0; i < n; ++i) r = (r << 1) | ((m >> i) & 1u);
            return r;
          };
          if (!found || rank(mask) > rank(best)) best = mask;
          found = true;
        }
        const auto d = first_fit(queue, free, 7);
        std::uint32_t got = 0;
        NodeCount used = 0;
        for (const auto& s : d.started) {
          got |= 1u << s.job;
          used += queue[s.job].nodes;
          if (s.start_time != 7) out.fail("start time");
        }
        bool order_ok = std::is_sorted(d.started.begin(), d.started.end(),
                                       [](const auto& a, const auto& b) { return a.job < b.job; }) &&
                        std::is_sorted(d.still_queued.begin(), d.still_queued.end(),
                                       [](const auto& a, const auto& b) { return a.id < b.id; });
        if (got != best || d.free_after != free - used || d.started.size() + d.still_queued.size() != n || !order_ok) {
          out.fail("queue of " + std::to_string(n) + " free " + std::to_string(free));
        }
      }
    }
  }
  return out;
}

Outcome guard_exclusivity() {
  Outcome out;
  // R as an exact fraction p/q; q = 0 encodes +inf.
  const std::vector<std::pair<std::int64_t, std::int64_t>> ratios = {{1, 2}, {1, 1}, {6, 5}, {3, 2}, {2, 1},
                                                                     {8, 1}, {16, 1}, {1, 0}};
  for (NodeCount sum = 1; sum <= 60; ++sum) {
    for (NodeCount max = 1; max <= sum; ++max) {
      // Queue: one job of `max`, the rest filled with jobs no larger than max.
      std::vector<QueuedJob> q = {{0, max}};
      for (NodeCount left = sum - max; left > 0;) {
        const NodeCount n = std::min(left, max);
        q.push_back({static_cast<JobId>(q.size()), n});
        left -= n;
      }
      for (NodeCount owned = 1; owned <= 64; ++owned) {
        for (auto [p, qd] : ratios) {
          ++out.cases;
          const double r = qd == 0 ? std::numeric_limits<double>::infinity() : double(p) / double(qd);
          const bool dr1_guard = qd != 0 && sum * qd > p * owned;
          const bool dr2_guard = !dr1_guard && max > owned;
          const auto req = scan_queue(q, owned, r);
          std::optional<ResourceRequest> expect;
          if (dr1_guard && sum > owned) expect = ResourceRequest{0, sum - owned, LeaseCause::Dr1};
          if (dr2_guard) expect = ResourceRequest{0, max - owned, LeaseCause::Dr2};
          const bool same = req.has_value() == expect.has_value() &&
                            (!req || (req->size == expect->size && req->cause == expect->cause));
          if (!same) {
            out.fail("sum " + std::to_string(sum) + " max " + std::to_string(max) + " owned " + std::to_string(owned) +
                     " R " + std::to_string(r));
          }
        }
      }
    }
  }
  return out;
}

Outcome ssp_degeneracy(std::size_t workloads, std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < workloads; ++i) {
    const bool mtc = i % 4 == 3;
    auto w = mtc ? random_dag(rng, 50, 4) : random_htc(rng, 60, 32, 12 * kSecondsPerHour);
    if (w.jobs.empty()) continue;
    const NodeCount b = w.max_nodes();
    TreEntry t;
    t.name = "t";
    t.workload = w;
    t.model = ModelKind::Dsp;
    t.fixed_size = b;
    t.params = mtc ? PolicyParams::mtc(b, inf) : PolicyParams::htc(b, inf);
    if (!mtc) t.window = 16 * kSecondsPerHour;
    ScenarioConfig sc;
    sc.entries = {t};
    ++out.cases;
    const auto dsp = run_scenario(sc);
    const auto ssp = run_scenario(with_model(sc, ModelKind::Ssp));
    const auto& a = dsp.reports[0];
    const auto& f = ssp.reports[0];
    bool same = a.billed_node_hours == f.billed_node_hours && a.completed_jobs == f.completed_jobs &&
                a.busy_node_hours == f.busy_node_hours && a.peak_nodes == f.peak_nodes;
    for (std::size_t j = 0; same && j < w.jobs.size(); ++j) {
      same = dsp.jobs[0][j].start == ssp.jobs[0][j].start && dsp.jobs[0][j].finish == ssp.jobs[0][j].finish;
    }
    if (!same) out.fail("workload " + std::to_string(i));
  }
  return out;
}

Outcome speedup_noop(std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (int i = 0; i < 20; ++i) {
    auto sc = random_scenario(rng);
    RunOptions slow, fast;
    slow.engine.speedup.factor = 1;
    fast.engine.speedup.factor = 100;
    ++out.cases;
    const auto a = run_scenario(sc, slow);
    const auto b = run_scenario(sc, fast);
    if (!(a.reports == b.reports) || !(a.provider == b.provider)) out.fail("scenario " + std::to_string(i));
  }
  // Wall-clock pacing on a short timeline: same results, only slower.
  Workload w;
  for (JobId i = 0; i < 3; ++i) {
    Job j;
    j.id = i;
    j.submit_time = i;
    j.runtime = 2;
    w.jobs.push_back(j);
  }
  RunOptions paced;
  paced.engine.pace_wall_clock = true;
  paced.engine.speedup.factor = 100;
  ++out.cases;
  if (!(run_fixed(w, 2, Ownership::Leased, std::nullopt, kSecondsPerHour, paced) ==
        run_fixed(w, 2, Ownership::Leased))) {
    out.fail("paced run differs");
  }
  return out;
}

Outcome billed_at_least_busy(std::size_t scenarios, std::uint64_t seed) {
  Outcome out;
  Rng rng(seed);
  for (std::size_t i = 0; i < scenarios; ++i) {
    const auto sc = random_scenario(rng);
    ++out.cases;
    try {
      const auto res = run_scenario(sc);
      for (const auto& r : res.reports) {
        if (r.billed_node_hours + 1e-9 < r.busy_node_hours) out.fail("scenario " + std::to_string(i) + " " + r.workload);
      }
      if (res.provider.billed_node_hours + 1e-9 < res.provider.busy_node_hours) {
        out.fail("scenario " + std::to_string(i) + " provider");
      }
    } catch (const std::exception& e) {
      out.fail("scenario " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

Outcome determinism(std::uint64_t seed) {
  Outcome out;
  ScenarioConfig sc;
  sc.name = "det";
  sc.entries = {
      TreEntry{"nasa", generate_htc_trace(nasa_ipsc_shape(), seed), ModelKind::Dsp, 128, PolicyParams::htc(40, 1.2), 0,
               336 * kSecondsPerHour},
      TreEntry{"montage", generate_montage(MontageShape{}, seed), ModelKind::Dsp, 166, PolicyParams::mtc(10, 8), 0, {}}};
  auto emit = [&] {
    std::ostringstream csv, trace;
    std::vector<ReportRow> rows;
    std::vector<ProviderRow> providers;
    for (auto m : {ModelKind::Dcs, ModelKind::Ssp, ModelKind::Drp, ModelKind::Dsp}) {
      RunOptions opts;
      opts.trace = &trace;
      const auto res = run_scenario(with_model(sc, m), opts);
      for (const auto& r : res.reports) rows.push_back({sc.name, r});
      providers.push_back({sc.name, res.provider});
    }
    write_runs_csv(csv, rows, providers);
    return csv.str() + trace.str();
  };
  ++out.cases;
  if (emit() != emit()) out.fail("outputs differ between runs");
  return out;
}

}  // namespace props
