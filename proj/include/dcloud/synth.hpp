#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "dcloud/domain.hpp"

namespace dcloud {

// Portable sampling on top of mt19937_64 (whose output sequence is fixed by the
// standard); std:: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);  // inclusive
  double normal();
  double lognormal(double log_median, double sigma);
  double exponential(double rate);
  std::size_t weighted(const std::vector<double>& weights);

 private:
  std::mt19937_64 engine_;
};

// Montage-shaped workflow: projection, pairwise diff, fit concatenation,
// background model, background correction, table, co-add, shrink, JPEG.
struct MontageShape {
  std::size_t images = 166;
  std::size_t diffs = 662;
  double mean_runtime = 11.38;  // over all tasks, hit exactly (to the second)
  SimTime concat_fit = 60;
  SimTime bg_model = 110;
  SimTime img_table = 10;
  SimTime add = 100;
  SimTime shrink = 30;
  SimTime jpeg = 15;
};

Workload generate_montage(const MontageShape& shape, std::uint64_t seed);

// Batch trace with a daily arrival cycle. Node demands are drawn in machine
// processor units so the trace can exercise scale_trace.
struct HtcTraceShape {
  std::string name = "htc";
  std::size_t jobs = 2603;
  SimTime duration = 14 * 24 * kSecondsPerHour;
  NodeCount machine_procs = 128;
  NodeCount procs_per_node = 1;
  std::vector<NodeCount> sizes;        // in nodes
  std::vector<double> size_weights;
  // Runtime is lognormal per size class, capped at max_runtime.
  std::vector<double> median_runtime;  // seconds, per size class
  double runtime_sigma = 1.5;
  SimTime max_runtime = 12 * kSecondsPerHour;
  // Fraction of jobs drawn from a separate short-runtime mode (test runs that
  // last seconds), independent of size class.
  double short_fraction = 0.0;
  double short_median = 20;
  // Short jobs come in sessions: one user resubmitting the same size. Session
  // length is geometric with this mean; jobs are spaced by an exponential gap.
  double short_session_mean = 1.0;
  double short_session_gap = 30;
  // Arrival intensity multipliers.
  double night_factor = 0.3;    // 20:00-08:00
  double weekend_factor = 0.4;
  double day_jitter = 0.35;     // per-day lognormal sigma on intensity
  double second_half_factor = 1.0;
};

HtcTraceShape nasa_ipsc_shape();
HtcTraceShape sdsc_blue_shape();

Workload generate_htc_trace(const HtcTraceShape& shape, std::uint64_t seed);

}  // namespace dcloud
