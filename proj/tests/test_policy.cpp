#include <doctest.h>

#include <limits>

#include "dcloud/policy.hpp"

using namespace dcloud;

namespace {

std::vector<QueuedJob> demands(std::initializer_list<NodeCount> nodes) {
  std::vector<QueuedJob> q;
  JobId id = 0;
  for (auto n : nodes) q.push_back({id++, n});
  return q;
}

}  // namespace

TEST_CASE("obtaining ratio") {
  CHECK(obtaining_ratio(demands({4, 4}), 4) == 2.0);
  CHECK(obtaining_ratio({}, 40) == 0.0);
  CHECK(obtaining_ratio(demands({3}), 2) == 1.5);
  CHECK_THROWS_AS(obtaining_ratio(demands({3}), 0), std::logic_error);
}

TEST_CASE("dr1 sizing") {
  CHECK(compute_dr1(demands({50, 50}), 40) == 60);
  CHECK(compute_dr1(demands({40}), 40) == 0);
}

TEST_CASE("start-up burst of 77 nodes against B40 R1.2") {
  // Queue as it stands at the first scan tick: 77 nodes waiting, 40 owned.
  const auto q = demands({32, 16, 16, 8, 4, 1});
  CHECK(obtaining_ratio(q, 40) == doctest::Approx(1.925));
  auto req = scan_queue(q, 40, 1.2, 0);
  REQUIRE(req);
  CHECK(req->cause == LeaseCause::Dr1);
  CHECK(req->size == 37);
}

TEST_CASE("dr2 sizing and guard") {
  CHECK(compute_dr2(demands({144}), 80) == 64);
  auto req = scan_queue(demands({144}), 80, 2.0, 1);
  REQUIRE(req);
  CHECK(req->cause == LeaseCause::Dr2);
  CHECK(req->size == 64);
  CHECK(req->tre == 1);
  CHECK_FALSE(scan_queue(demands({64}), 80, 1.5));
}

TEST_CASE("ratio above R takes the dr1 path") {
  const auto q = demands({6, 6, 6, 6, 6, 6, 6, 6, 6, 6, 100});
  auto req = scan_queue(q, 90, 1.5);
  REQUIRE(req);
  CHECK(req->cause == LeaseCause::Dr1);
  CHECK(req->size == 70);
}

TEST_CASE("scan guards") {
  CHECK(scan_queue(demands({100, 90}), 100, 1.5)->cause == LeaseCause::Dr1);
  CHECK_FALSE(scan_queue({}, 40, 1.2));
  // R = +inf never fires DR1.
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_FALSE(scan_queue(demands({10, 10, 10, 10, 10}), 10, inf));
}

TEST_CASE("idle check") {
  auto r = idle_check(100, 30, 40, {60, 3600, 1});
  CHECK(r.release == 60);
  CHECK_FALSE(r.capped);
  CHECK_FALSE(idle_check(100, 50, 40, {60, 3600, 1}).release);
  auto c = idle_check(100, 0, 80, {60, 3600, 1});
  CHECK(c.release == 20);
  CHECK(c.capped);
}

TEST_CASE("provision all or nothing") {
  CHECK(provision_decide(64, 500) == ProvisionOutcome{Granted{64}});
  CHECK(provision_decide(64, 63) == ProvisionOutcome{Rejected{}});
  CHECK(provision_decide(64, std::nullopt) == ProvisionOutcome{Granted{64}});

  ProvisionPool pool(100);
  CHECK(std::holds_alternative<Granted>(pool.request(60)));
  CHECK(std::holds_alternative<Rejected>(pool.request(41)));
  CHECK(pool.free() == 40);
  pool.release(37);
  CHECK(pool.free() == 77);
}

TEST_CASE("lifecycle") {
  CHECK(lifecycle_transition(Lifecycle::Inexistent, LifecycleAction::Apply) == Lifecycle::Planning);
  CHECK(lifecycle_transition(Lifecycle::Created, LifecycleAction::Started) == Lifecycle::Running);
  CHECK(lifecycle_transition(Lifecycle::Running, LifecycleAction::Destroy) == Lifecycle::Destroyed);
  CHECK_THROWS_AS(lifecycle_transition(Lifecycle::Planning, LifecycleAction::Destroy), StateMachineError);
  CHECK_THROWS_WITH(lifecycle_transition(Lifecycle::Planning, LifecycleAction::Destroy),
                    doctest::Contains("planning"));

  TreLifecycle t;
  t.apply(LifecycleAction::Apply);
  CHECK_THROWS_AS(t.apply(LifecycleAction::Deployed), StateMachineError);  // not validated yet
  t.apply(LifecycleAction::Validated);
  CHECK(t.state() == Lifecycle::Planning);
  CHECK(t.apply(LifecycleAction::Deployed) == Lifecycle::Created);
  CHECK(t.apply(LifecycleAction::Started) == Lifecycle::Running);
  CHECK(t.apply(LifecycleAction::Destroy) == Lifecycle::Destroyed);
  CHECK_THROWS_AS(t.apply(LifecycleAction::Apply), StateMachineError);
}
