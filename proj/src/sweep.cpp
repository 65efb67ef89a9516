#include "dcloud/sweep.hpp"

#include <algorithm>
#include <exception>

#include <omp.h>

namespace dcloud {

std::vector<SweepPoint> sweep_grid(std::vector<NodeCount> initial_nodes, std::vector<double> threshold_ratios) {
  std::sort(initial_nodes.begin(), initial_nodes.end());
  initial_nodes.erase(std::unique(initial_nodes.begin(), initial_nodes.end()), initial_nodes.end());
  std::sort(threshold_ratios.begin(), threshold_ratios.end());
  threshold_ratios.erase(std::unique(threshold_ratios.begin(), threshold_ratios.end()), threshold_ratios.end());
  std::vector<SweepPoint> grid;
  grid.reserve(initial_nodes.size() * threshold_ratios.size());
  for (auto b : initial_nodes) {
    for (auto r : threshold_ratios) grid.push_back({b, r});
  }
  return grid;
}

namespace {

SweepRow run_point(const SweepJob& job, const SweepPoint& point) {
  SweepRow row;
  row.workload = job.entry.name;
  row.initial_nodes = point.initial_nodes;
  row.threshold_ratio = point.threshold_ratio;
  try {
    ScenarioConfig sc;
    sc.name = "sweep";
    sc.pool_capacity = job.pool_capacity;
    sc.lease_quantum = job.lease_quantum;
    TreEntry e = job.entry;
    e.model = ModelKind::Dsp;
    e.params.initial_nodes = point.initial_nodes;
    e.params.threshold_ratio = point.threshold_ratio;
    sc.entries.push_back(std::move(e));
    RunOptions opts = job.options;
    opts.trace = nullptr;
    row.report = run_dsp(sc, opts).reports.front();
  } catch (const std::exception& err) {
    row.error = err.what();
  }
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_serial(const SweepJob& job, const std::vector<SweepPoint>& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (const auto& p : grid) rows.push_back(run_point(job, p));
  return rows;
}

std::vector<SweepRow> sweep_parallel(const SweepJob& job, const std::vector<SweepPoint>& grid, int threads) {
  std::vector<SweepRow> rows(grid.size());
  const auto n = static_cast<std::int64_t>(grid.size());
  const int team = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(team)
  for (std::int64_t i = 0; i < n; ++i) {
    rows[static_cast<std::size_t>(i)] = run_point(job, grid[static_cast<std::size_t>(i)]);
  }
  return rows;
}

}  // namespace dcloud
