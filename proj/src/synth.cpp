#include "dcloud/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace dcloud {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(engine_() % span);
}

double Rng::normal() {
  // Box-Muller; one variate per call keeps the stream position predictable.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double Rng::lognormal(double log_median, double sigma) { return std::exp(log_median + sigma * normal()); }

double Rng::exponential(double rate) { return -std::log1p(-uniform()) / rate; }

std::size_t Rng::weighted(const std::vector<double>& weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double x = uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (x < weights[i]) return i;
    x -= weights[i];
  }
  return weights.size() - 1;
}

namespace {

SimTime draw_runtime(Rng& rng, double median, double sigma, SimTime cap) {
  const double v = rng.lognormal(std::log(median), sigma);
  return std::clamp<SimTime>(static_cast<SimTime>(std::llround(v)), 1, cap);
}

std::vector<std::pair<std::size_t, std::size_t>> overlap_pairs(std::size_t images, std::size_t wanted) {
  const auto cols = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(images))));
  const std::vector<std::pair<std::int64_t, std::int64_t>> offsets = {
      {0, 1}, {1, 0}, {1, 1}, {1, -1}, {0, 2}, {2, 0}, {2, 1}, {1, 2}, {2, -1}, {1, -2}, {2, 2}, {2, -2}};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& [dr, dc] : offsets) {
    for (std::size_t i = 0; i < images && pairs.size() < wanted; ++i) {
      const auto r = static_cast<std::int64_t>(i) / cols + dr;
      const auto c = static_cast<std::int64_t>(i) % cols + dc;
      if (c < 0 || c >= cols) continue;
      const auto j = r * cols + c;
      if (j < 0 || j >= static_cast<std::int64_t>(images)) continue;
      const auto jj = static_cast<std::size_t>(j);
      const std::pair<std::size_t, std::size_t> key{std::min(i, jj), std::max(i, jj)};
      if (seen.insert(key).second) pairs.push_back(key);
    }
  }
  if (pairs.size() < wanted) throw std::invalid_argument("montage: too many diffs for the image grid");
  return pairs;
}

}  // namespace

Workload generate_montage(const MontageShape& shape, std::uint64_t seed) {
  Rng rng(seed);
  Workload w;
  w.kind = WorkloadKind::Mtc;
  w.source.name = "montage";

  auto add = [&](std::string name, SimTime runtime) {
    Job j;
    j.id = static_cast<JobId>(w.jobs.size());
    j.runtime = std::max<SimTime>(runtime, 1);
    j.nodes = 1;
    j.workflow_id = 0;
    j.trace_id = std::move(name);
    w.jobs.push_back(std::move(j));
    return w.jobs.back().id;
  };

  std::vector<JobId> project, diff, background;
  for (std::size_t i = 0; i < shape.images; ++i) {
    project.push_back(add("mProjectPP_" + std::to_string(i), draw_runtime(rng, 13.0, 0.15, 40)));
  }
  for (const auto& [a, b] : overlap_pairs(shape.images, shape.diffs)) {
    const auto id = add("mDiffFit_" + std::to_string(diff.size()), draw_runtime(rng, 10.0, 0.25, 40));
    w.jobs[id].deps = {project[a], project[b]};
    diff.push_back(id);
  }
  const auto concat = add("mConcatFit", shape.concat_fit);
  w.jobs[concat].deps = diff;
  const auto model = add("mBgModel", shape.bg_model);
  w.jobs[model].deps = {concat};
  for (std::size_t i = 0; i < shape.images; ++i) {
    const auto id = add("mBackground_" + std::to_string(i), draw_runtime(rng, 10.0, 0.15, 40));
    w.jobs[id].deps = {project[i], model};
    background.push_back(id);
  }
  const auto table = add("mImgtbl", shape.img_table);
  w.jobs[table].deps = background;
  const auto coadd = add("mAdd", shape.add);
  w.jobs[coadd].deps = {table};
  const auto shrink = add("mShrink", shape.shrink);
  w.jobs[shrink].deps = {coadd};
  const auto jpeg = add("mJPEG", shape.jpeg);
  w.jobs[jpeg].deps = {shrink};

  // Nudge the diff runtimes one second at a time until the mean is exact.
  const auto target = static_cast<SimTime>(std::llround(shape.mean_runtime * static_cast<double>(w.jobs.size())));
  SimTime delta = target - w.total_runtime();
  std::size_t k = 0;
  std::size_t guard = 0;
  while (delta != 0 && !diff.empty()) {
    auto& job = w.jobs[diff[k++ % diff.size()]];
    if (delta > 0) {
      ++job.runtime;
      --delta;
    } else if (job.runtime > 1) {
      --job.runtime;
      ++delta;
    }
    if (++guard > 100 * w.jobs.size() * 1000) throw std::logic_error("montage: cannot reach target mean runtime");
  }
  w.source.original_scale = 1;
  return w;
}

HtcTraceShape nasa_ipsc_shape() {
  HtcTraceShape s;
  s.name = "nasa-ipsc-like";
  s.jobs = 2603;
  s.machine_procs = 128;
  s.procs_per_node = 1;
  s.sizes = {1, 2, 4, 8, 16, 32, 64, 128};
  s.size_weights = {0.13494, 0.08340, 0.02688, 0.22769, 0.40047, 0.10247, 0.02122, 0.00294};
  s.median_runtime = {21, 47, 321, 370, 791, 1575, 3600, 28038};
  s.runtime_sigma = 1.333;
  s.max_runtime = 12 * kSecondsPerHour;
  s.short_fraction = 0.167;
  s.short_median = 11.013;
  s.short_session_mean = 5.145;
  s.short_session_gap = 37.302;
  s.night_factor = 0.181;
  s.weekend_factor = 0.158;
  s.day_jitter = 0.148;
  s.second_half_factor = 1.0;
  return s;
}

HtcTraceShape sdsc_blue_shape() {
  HtcTraceShape s;
  s.name = "sdsc-blue-like";
  s.jobs = 2660;
  s.machine_procs = 1152;
  s.procs_per_node = 8;
  s.sizes = {1, 2, 4, 8, 16, 32, 64, 144};
  s.size_weights = {0.07789, 0.28392, 0.32651, 0.07775, 0.19581, 0.01100, 0.02427, 0.00285};
  s.median_runtime = {60, 239, 116, 183, 1782, 2256, 8661, 7880};
  s.runtime_sigma = 1.133;
  s.max_runtime = 18 * kSecondsPerHour;
  s.short_fraction = 0.249;
  s.short_median = 4.593;
  s.short_session_mean = 3.056;
  s.short_session_gap = 31.16;
  s.night_factor = 0.31;
  s.weekend_factor = 0.378;
  s.day_jitter = 0.267;
  s.second_half_factor = 1.393;
  return s;
}

Workload generate_htc_trace(const HtcTraceShape& shape, std::uint64_t seed) {
  if (shape.sizes.empty() || shape.sizes.size() != shape.size_weights.size() ||
      shape.sizes.size() != shape.median_runtime.size()) {
    throw std::invalid_argument("generate_htc_trace: size classes are inconsistent");
  }
  Rng rng(seed);
  const auto hours = static_cast<std::size_t>((shape.duration + kSecondsPerHour - 1) / kSecondsPerHour);
  const std::size_t days = (hours + 23) / 24;
  std::vector<double> day_factor(days);
  for (auto& f : day_factor) f = rng.lognormal(0.0, shape.day_jitter);

  std::vector<double> intensity(hours);
  for (std::size_t h = 0; h < hours; ++h) {
    const auto day = h / 24;
    const auto hour = h % 24;
    double v = day_factor[day];
    if (hour < 8 || hour >= 20) v *= shape.night_factor;
    if (day % 7 == 1 || day % 7 == 2) v *= shape.weekend_factor;  // trace starts on a Friday
    if (h >= hours / 2) v *= shape.second_half_factor;
    intensity[h] = v;
  }

  Workload w;
  w.kind = WorkloadKind::Htc;
  w.source.name = shape.name;
  w.source.original_scale = shape.machine_procs;
  if (shape.short_session_mean < 1.0) throw std::invalid_argument("generate_htc_trace: session mean must be >= 1");
  while (w.jobs.size() < shape.jobs) {
    const auto hour = rng.weighted(intensity);
    Job j;
    j.submit_time = static_cast<SimTime>(hour) * kSecondsPerHour + rng.uniform_int(0, kSecondsPerHour - 1);
    const auto cls = rng.weighted(shape.size_weights);
    j.nodes = shape.sizes[cls] * shape.procs_per_node;
    const bool short_run = rng.uniform() < shape.short_fraction;
    if (!short_run) {
      j.runtime = draw_runtime(rng, shape.median_runtime[cls], shape.runtime_sigma, shape.max_runtime);
      w.jobs.push_back(std::move(j));
      continue;
    }
    const double stop = 1.0 / shape.short_session_mean;
    do {
      j.runtime = draw_runtime(rng, shape.short_median, 0.8, shape.max_runtime);
      w.jobs.push_back(j);
      j.submit_time += 1 + static_cast<SimTime>(rng.exponential(1.0 / shape.short_session_gap));
    } while (w.jobs.size() < shape.jobs && rng.uniform() >= stop);
  }
  w.jobs.erase(std::remove_if(w.jobs.begin(), w.jobs.end(),
                              [&](const Job& j) { return j.submit_time >= shape.duration; }),
               w.jobs.end());
  std::stable_sort(w.jobs.begin(), w.jobs.end(),
                   [](const Job& a, const Job& b) { return a.submit_time < b.submit_time; });
  for (std::size_t i = 0; i < w.jobs.size(); ++i) {
    w.jobs[i].id = static_cast<JobId>(i);
    w.jobs[i].trace_id = std::to_string(i + 1);
  }
  return w;
}

}  // namespace dcloud
