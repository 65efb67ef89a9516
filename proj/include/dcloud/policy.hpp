#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>

#include "dcloud/domain.hpp"
#include "dcloud/ledger.hpp"
#include "dcloud/scheduler.hpp"

namespace dcloud {

// ---- resource management policy (server side) ------------------------------

// Queued node demand over owned nodes; 0 for an empty queue.
// Throws std::logic_error when owned < 1.
double obtaining_ratio(std::span<const QueuedJob> queue, NodeCount owned);

NodeCount queued_demand(std::span<const QueuedJob> queue);
NodeCount largest_demand(std::span<const QueuedJob> queue);

// DR1 = queued demand - owned, floored at 0.
NodeCount compute_dr1(std::span<const QueuedJob> queue, NodeCount owned);

// DR2 = largest queued demand - owned, floored at 0.
NodeCount compute_dr2(std::span<const QueuedJob> queue, NodeCount owned);

struct ResourceRequest {
  TreId tre = 0;
  NodeCount size = 0;
  LeaseCause cause = LeaseCause::Dr1;
};

// One scan of the queue: the DR1 guard (ratio > R) first, then the DR2 guard
// (largest job > owned and ratio <= R). At most one request per scan.
std::optional<ResourceRequest> scan_queue(std::span<const QueuedJob> queue, NodeCount owned, double threshold_ratio,
                                          TreId tre = 0);

struct IdleObligation {
  NodeCount size = 0;
  SimTime due = 0;
  LeaseId lease = 0;
};

struct IdleCheckResult {
  // Nodes to release now; nullopt means the timer re-arms for another period.
  std::optional<NodeCount> release;
  bool capped = false;  // release was clipped to keep owned >= initial
};

// Releases exactly `obligation.size` nodes when that many are idle, never
// taking owned below the initial allocation.
IdleCheckResult idle_check(NodeCount owned, NodeCount busy, NodeCount initial, const IdleObligation& obligation);

// ---- resource provision policy (provider side) -----------------------------

struct Granted {
  NodeCount size;
  friend bool operator==(const Granted&, const Granted&) = default;
};
struct Rejected {
  friend bool operator==(const Rejected&, const Rejected&) = default;
};
using ProvisionOutcome = std::variant<Granted, Rejected>;

// All-or-nothing. An unbounded pool (nullopt) grants everything.
ProvisionOutcome provision_decide(NodeCount request, std::optional<NodeCount> pool_free);

class ProvisionPool {
 public:
  explicit ProvisionPool(std::optional<NodeCount> capacity = std::nullopt) : capacity_(capacity) {}

  ProvisionOutcome request(NodeCount size);
  // Passive reclaim: releases are always accepted in full.
  void release(NodeCount size);

  std::optional<NodeCount> free() const;
  std::optional<NodeCount> capacity() const { return capacity_; }
  NodeCount allocated() const { return allocated_; }

 private:
  std::optional<NodeCount> capacity_;
  NodeCount allocated_ = 0;
};

// ---- TRE lifecycle ---------------------------------------------------------

enum class LifecycleAction { Apply, Validated, Deployed, Started, Destroy };

std::string_view to_string(LifecycleAction action);

class StateMachineError : public std::logic_error {
 public:
  StateMachineError(Lifecycle from, LifecycleAction action);
};

// inexistent -apply-> planning -validated-> planning -deployed-> created
// -started-> running -destroy-> destroyed. Deployment requires the request to
// have been validated first.
class TreLifecycle {
 public:
  Lifecycle state() const { return state_; }
  bool validated() const { return validated_; }
  Lifecycle apply(LifecycleAction action);

 private:
  Lifecycle state_ = Lifecycle::Inexistent;
  bool validated_ = false;
};

// Pure transition function; throws StateMachineError on an illegal edge.
Lifecycle lifecycle_transition(Lifecycle from, LifecycleAction action);

}  // namespace dcloud
