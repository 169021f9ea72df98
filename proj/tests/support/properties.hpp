#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace xsdprune::testing {

  struct property_failure {
    std::string property;
    std::uint64_t seed = 0;
    std::string detail;
  };

  /// Outcome of running a family of randomized properties. Each trial is
  /// one seed; a trial checks every property of the family.
  struct property_run {
    std::size_t trials = 0;
    std::size_t checks = 0;
    std::vector<property_failure> failures;

    bool ok() const { return failures.empty(); }
  };

  /// Union laws, the subset order, dump round-trip and metric monotonicity
  /// on random subsets of a random schema set.
  property_run
  set_algebra_properties(std::uint64_t first_seed, std::size_t trials);

  /// Soundness, closure, monotonicity, corpus-order and job-count
  /// invariance of the analyzer on random schemas with valid corpora.
  /// `shuffles` reorderings are compared per trial.
  property_run
  analyzer_properties(std::uint64_t first_seed, std::size_t trials,
                      std::size_t shuffles = 10);

  /// Emitting the subset of a random corpus and loading the output gives
  /// back the same set, and the corpus yields the same subset against it.
  property_run
  round_trip_properties(std::uint64_t first_seed, std::size_t trials);

  /// First few failures, one per line.
  std::string
  describe(const property_run& run, std::size_t limit = 5);

} // namespace xsdprune::testing
