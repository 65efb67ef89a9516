#pragma once

#include <optional>
#include <vector>

#include "dcloud/models.hpp"
#include "dcloud/report.hpp"

namespace dcloud {

struct SweepPoint {
  NodeCount initial_nodes = 0;
  double threshold_ratio = 0;

  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

// Cartesian product sorted by (B, R) with duplicates removed.
std::vector<SweepPoint> sweep_grid(std::vector<NodeCount> initial_nodes, std::vector<double> threshold_ratios);

struct SweepJob {
  TreEntry entry;  // model and params are overridden per point
  std::optional<NodeCount> pool_capacity;
  SimTime lease_quantum = kSecondsPerHour;
  RunOptions options{};
};

// Runs one DSP simulation per grid point. A failing point is reported in its
// row and does not stop the sweep. Row order follows the grid.
std::vector<SweepRow> sweep_serial(const SweepJob& job, const std::vector<SweepPoint>& grid);

// Same rows as sweep_serial, computed with OpenMP. threads <= 0 uses the
// runtime default.
std::vector<SweepRow> sweep_parallel(const SweepJob& job, const std::vector<SweepPoint>& grid, int threads = 0);

}  // namespace dcloud
