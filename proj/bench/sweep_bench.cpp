#include <chrono>
#include <cstdlib>
#include <iostream>

#include <omp.h>

#include "dcloud/sweep.hpp"
#include "dcloud/synth.hpp"

using namespace dcloud;

// Times the serial reference sweep against the OpenMP sweep on the same grid
// and checks that both produce the same rows.
int main(int argc, char** argv) {
  const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
  SweepJob job;
  job.entry.name = "nasa";
  job.entry.workload = generate_htc_trace(nasa_ipsc_shape(), 1);
  job.entry.params = PolicyParams::htc(10, 1.0);
  job.entry.window = 14 * 24 * kSecondsPerHour;
  const auto grid = sweep_grid({10, 20, 30, 40, 50, 60, 70, 80}, {1.0, 1.2, 1.4, 1.6, 1.8, 2.0});

  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  const auto serial = sweep_serial(job, grid);
  const auto t1 = Clock::now();
  const auto parallel = sweep_parallel(job, grid, threads);
  const auto t2 = Clock::now();

  bool same = serial.size() == parallel.size();
  for (std::size_t i = 0; same && i < serial.size(); ++i) {
    same = serial[i].report == parallel[i].report && serial[i].error == parallel[i].error;
  }
  const double ts = std::chrono::duration<double>(t1 - t0).count();
  const double tp = std::chrono::duration<double>(t2 - t1).count();
  std::cout << "grid points: " << grid.size() << "\n"
            << "serial:   " << ts << " s\n"
            << "parallel: " << tp << " s (" << threads << " threads)\n"
            << "speedup:  " << (tp > 0 ? ts / tp : 0.0) << "x\n"
            << "rows identical: " << (same ? "yes" : "no") << "\n";
  return same ? 0 : 1;
}
