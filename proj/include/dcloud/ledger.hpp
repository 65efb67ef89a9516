#pragma once

#include <map>
#include <optional>
#include <string_view>
#include <vector>

#include "dcloud/domain.hpp"

namespace dcloud {

enum class LeaseCause { Initial, Fixed, Dr1, Dr2, Release, DrpJob };

std::string_view to_string(LeaseCause cause);

struct LedgerEvent {
  SimTime time = 0;
  TreId tre = 0;
  NodeCount delta = 0;  // positive = grant, negative = release
  LeaseCause cause = LeaseCause::Initial;
  LeaseId lease = 0;
};

// One contiguous allocation of `nodes` between start and end.
struct GrantInterval {
  NodeCount nodes = 0;
  SimTime start = 0;
  SimTime end = 0;
};

// Time-ordered record of every grant and release in a scenario. The single
// source for node-hour, peak and adjustment metrics.
class LeaseLedger {
 public:
  explicit LeaseLedger(std::optional<NodeCount> capacity = std::nullopt) : capacity_(capacity) {}

  // Throws std::logic_error if the event would move time backwards, drive a
  // TRE's holding negative, overdraw a lease, or exceed pool capacity.
  void append(const LedgerEvent& event);

  const std::vector<LedgerEvent>& events() const { return events_; }
  std::optional<NodeCount> capacity() const { return capacity_; }
  NodeCount allocated() const { return allocated_; }
  NodeCount held_by(TreId tre) const;

  // Max of the global prefix sum, recomputed from the raw events.
  NodeCount peak() const;
  NodeCount peak_for(TreId tre) const;

  // Reconstructs grant intervals from lease ids. Leases still open are closed
  // at `horizon`. Sorted by start, then end.
  std::vector<GrantInterval> intervals(std::optional<TreId> tre, SimTime horizon) const;

  NodeCount adjustment_nodes(std::optional<TreId> tre = std::nullopt) const;
  std::size_t adjustment_events(std::optional<TreId> tre = std::nullopt) const;

 private:
  std::optional<NodeCount> capacity_;
  std::vector<LedgerEvent> events_;
  std::map<TreId, NodeCount> per_tre_;
  std::map<LeaseId, NodeCount> open_leases_;
  NodeCount allocated_ = 0;
};

}  // namespace dcloud
