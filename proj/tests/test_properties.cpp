#include <doctest.h>

#include "properties.hpp"

namespace {

void require_clean(const props::Outcome& o) {
  for (const auto& n : o.notes) MESSAGE(n);
  CHECK(o.cases > 0);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("capacity conservation") { require_clean(props::capacity_conservation(1000, 1)); }
TEST_CASE("dependency ordering") { require_clean(props::dependency_ordering(500, 2)); }
TEST_CASE("first fit equals brute force") { require_clean(props::first_fit_vs_brute_force()); }
TEST_CASE("dr1 and dr2 guards are exclusive") { require_clean(props::guard_exclusivity()); }
TEST_CASE("dsp with infinite R degenerates to ssp") { require_clean(props::ssp_degeneracy(200, 3)); }
TEST_CASE("speed-up factor does not change results") { require_clean(props::speedup_noop(4)); }
TEST_CASE("billed covers busy") { require_clean(props::billed_at_least_busy(300, 5)); }
TEST_CASE("runs are byte identical") { require_clean(props::determinism(6)); }
