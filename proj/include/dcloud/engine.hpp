#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "dcloud/domain.hpp"

namespace dcloud {

// Declaration order is the tie-break at equal timestamps: a finishing job
// frees nodes before the same-instant scan looks at the queue.
enum class EventKind : std::uint8_t {
  TreCreate,
  JobFinish,
  ScanTick,
  JobArrival,
  IdleCheckTick,
  LeaseExpiryBoundary,
  TreDestroy,
};

std::string_view to_string(EventKind kind);

struct Event {
  SimTime time = 0;
  std::uint64_t seq = 0;  // assigned by the queue
  EventKind kind = EventKind::JobArrival;
  TreId tre = 0;
  JobId job = kNoJob;
  std::int64_t aux = 0;  // kind-specific payload (obligation id, lease id, ...)
};

class SimulationAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EventQueue {
 public:
  // Throws std::logic_error for an event earlier than the current clock.
  void push(Event e);
  Event pop_next();
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  SimTime clock() const { return clock_; }

 private:
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      if (a.time != b.time) return a.time > b.time;
      if (a.kind != b.kind) return a.kind > b.kind;
      return a.seq > b.seq;
    }
  };
  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  std::uint64_t next_seq_ = 0;
  SimTime clock_ = 0;
};

struct SpeedupFactor {
  std::int64_t factor = 100;
  void validate() const {
    if (factor < 1) throw std::invalid_argument("speed-up factor must be >= 1");
  }
};

struct EngineOptions {
  // Wall-clock pacing replays the timeline at factor x real time. Off by
  // default; it never changes the simulated timeline.
  bool pace_wall_clock = false;
  SpeedupFactor speedup{};
  // Abort when this many consecutive events fire without the clock moving.
  std::size_t livelock_limit = 1'000'000;
};

struct TraceRecord {
  SimTime time;
  EventKind kind;
  TreId tre;
  JobId job;
  NodeCount delta;
};

// One tab-separated line: time kind tre job delta.
void write_trace_line(std::ostream& out, const TraceRecord& r);

class Simulator {
 public:
  using Handler = std::function<void(const Event&, Simulator&)>;

  explicit Simulator(EngineOptions options = {});

  void schedule(Event e) { queue_.push(e); }
  SimTime now() const { return queue_.clock(); }

  // Drains the queue, dispatching each event to the handler.
  // Returns the number of events processed.
  std::size_t run(const Handler& handler);

  const EngineOptions& options() const { return options_; }

 private:
  EngineOptions options_;
  EventQueue queue_;
};

}  // namespace dcloud
