#include "dcloud/policy.hpp"

#include <algorithm>

namespace dcloud {

NodeCount queued_demand(std::span<const QueuedJob> queue) {
  NodeCount total = 0;
  for (const auto& j : queue) total += j.nodes;
  return total;
}

NodeCount largest_demand(std::span<const QueuedJob> queue) {
  NodeCount best = 0;
  for (const auto& j : queue) best = std::max(best, j.nodes);
  return best;
}

double obtaining_ratio(std::span<const QueuedJob> queue, NodeCount owned) {
  if (owned < 1) throw std::logic_error("obtaining_ratio: TRE owns no nodes");
  return static_cast<double>(queued_demand(queue)) / static_cast<double>(owned);
}

NodeCount compute_dr1(std::span<const QueuedJob> queue, NodeCount owned) {
  return std::max<NodeCount>(queued_demand(queue) - owned, 0);
}

NodeCount compute_dr2(std::span<const QueuedJob> queue, NodeCount owned) {
  return std::max<NodeCount>(largest_demand(queue) - owned, 0);
}

std::optional<ResourceRequest> scan_queue(std::span<const QueuedJob> queue, NodeCount owned, double threshold_ratio,
                                          TreId tre) {
  if (queue.empty()) return std::nullopt;
  const double ratio = obtaining_ratio(queue, owned);
  if (ratio > threshold_ratio) {
    const auto dr1 = compute_dr1(queue, owned);
    if (dr1 > 0) return ResourceRequest{tre, dr1, LeaseCause::Dr1};
    return std::nullopt;
  }
  if (largest_demand(queue) > owned) {
    return ResourceRequest{tre, compute_dr2(queue, owned), LeaseCause::Dr2};
  }
  return std::nullopt;
}

IdleCheckResult idle_check(NodeCount owned, NodeCount busy, NodeCount initial, const IdleObligation& obligation) {
  const NodeCount idle = owned - busy;
  if (idle < obligation.size) return {};
  const NodeCount reclaimable = std::max<NodeCount>(owned - initial, 0);
  if (obligation.size > reclaimable) return {reclaimable, true};
  return {obligation.size, false};
}

ProvisionOutcome provision_decide(NodeCount request, std::optional<NodeCount> pool_free) {
  if (request < 1) return Rejected{};
  if (pool_free && *pool_free < request) return Rejected{};
  return Granted{request};
}

ProvisionOutcome ProvisionPool::request(NodeCount size) {
  auto outcome = provision_decide(size, free());
  if (std::holds_alternative<Granted>(outcome)) allocated_ += size;
  return outcome;
}

void ProvisionPool::release(NodeCount size) {
  if (size < 0 || size > allocated_) throw std::logic_error("ProvisionPool: release exceeds allocation");
  allocated_ -= size;
}

std::optional<NodeCount> ProvisionPool::free() const {
  if (!capacity_) return std::nullopt;
  return *capacity_ - allocated_;
}

std::string_view to_string(LifecycleAction action) {
  switch (action) {
    case LifecycleAction::Apply: return "apply";
    case LifecycleAction::Validated: return "validated";
    case LifecycleAction::Deployed: return "deployed";
    case LifecycleAction::Started: return "started";
    case LifecycleAction::Destroy: return "destroy";
  }
  return "?";
}

StateMachineError::StateMachineError(Lifecycle from, LifecycleAction action)
    : std::logic_error("illegal TRE transition: " + std::string(to_string(action)) + " from state " +
                       std::string(to_string(from))) {}

Lifecycle lifecycle_transition(Lifecycle from, LifecycleAction action) {
  switch (action) {
    case LifecycleAction::Apply:
      if (from == Lifecycle::Inexistent) return Lifecycle::Planning;
      break;
    case LifecycleAction::Validated:
    case LifecycleAction::Deployed:
      if (from == Lifecycle::Planning) {
        return action == LifecycleAction::Validated ? Lifecycle::Planning : Lifecycle::Created;
      }
      break;
    case LifecycleAction::Started:
      if (from == Lifecycle::Created) return Lifecycle::Running;
      break;
    case LifecycleAction::Destroy:
      if (from == Lifecycle::Running) return Lifecycle::Destroyed;
      break;
  }
  throw StateMachineError(from, action);
}

Lifecycle TreLifecycle::apply(LifecycleAction action) {
  if (action == LifecycleAction::Deployed && state_ == Lifecycle::Planning && !validated_) {
    throw StateMachineError(state_, action);
  }
  state_ = lifecycle_transition(state_, action);
  if (action == LifecycleAction::Validated) validated_ = true;
  return state_;
}

}  // namespace dcloud
