#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

// Randomized and exhaustive property suites. Each returns the number of cases
// checked and the failures found (with a short description of the first few).
namespace props {

struct Outcome {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::vector<std::string> notes;

  void fail(std::string what) {
    ++failures;
    if (notes.size() < 5) notes.push_back(std::move(what));
  }
};

Outcome capacity_conservation(std::size_t scenarios, std::uint64_t seed);
Outcome dependency_ordering(std::size_t dags, std::uint64_t seed);
Outcome first_fit_vs_brute_force();
Outcome guard_exclusivity();
Outcome ssp_degeneracy(std::size_t workloads, std::uint64_t seed);
Outcome speedup_noop(std::uint64_t seed);
Outcome billed_at_least_busy(std::size_t scenarios, std::uint64_t seed);
Outcome determinism(std::uint64_t seed);

}  // namespace props
