#include "dcloud/engine.hpp"

#include <chrono>
#include <string>
#include <thread>

namespace dcloud {

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::TreCreate: return "TreCreate";
    case EventKind::JobFinish: return "JobFinish";
    case EventKind::ScanTick: return "ScanTick";
    case EventKind::JobArrival: return "JobArrival";
    case EventKind::IdleCheckTick: return "IdleCheckTick";
    case EventKind::LeaseExpiryBoundary: return "LeaseExpiry";
    case EventKind::TreDestroy: return "TreDestroy";
  }
  return "?";
}

void EventQueue::push(Event e) {
  if (e.time < clock_) {
    throw std::logic_error("event " + std::string(to_string(e.kind)) + " at t=" + std::to_string(e.time) +
                           " is before the clock t=" + std::to_string(clock_));
  }
  e.seq = next_seq_++;
  heap_.push(e);
}

Event EventQueue::pop_next() {
  if (heap_.empty()) throw std::logic_error("pop_next on an empty event queue");
  Event e = heap_.top();
  heap_.pop();
  clock_ = e.time;
  return e;
}

void write_trace_line(std::ostream& out, const TraceRecord& r) {
  out << r.time << '\t' << to_string(r.kind) << '\t' << r.tre << '\t';
  if (r.job == kNoJob) {
    out << '-';
  } else {
    out << r.job;
  }
  out << '\t' << r.delta << '\n';
}

Simulator::Simulator(EngineOptions options) : options_(options) { options_.speedup.validate(); }

std::size_t Simulator::run(const Handler& handler) {
  std::size_t processed = 0;
  std::size_t stalled = 0;
  SimTime last = queue_.clock();
  const auto wall_start = std::chrono::steady_clock::now();
  const SimTime sim_start = queue_.clock();
  while (!queue_.empty()) {
    const Event e = queue_.pop_next();
    if (e.time == last && processed > 0) {
      if (++stalled >= options_.livelock_limit) {
        throw SimulationAbort("livelock: " + std::to_string(stalled) + " events at t=" + std::to_string(e.time) +
                              " without the clock advancing (last " + std::string(to_string(e.kind)) + ")");
      }
    } else {
      stalled = 0;
      last = e.time;
    }
    if (options_.pace_wall_clock) {
      const auto target = std::chrono::duration<double>(static_cast<double>(e.time - sim_start) /
                                                        static_cast<double>(options_.speedup.factor));
      std::this_thread::sleep_until(wall_start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(target));
    }
    handler(e, *this);
    ++processed;
  }
  return processed;
}

}  // namespace dcloud
