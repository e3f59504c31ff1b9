#pragma once

// Randomized property suites shared by the unit tests and the acceptance
// runner. Each suite runs `cases` generated cases and stops at the first
// counterexample.

#include <cstddef>
#include <cstdint>
#include <string>

namespace rdd_eclat::testing {

struct PropertyOutcome {
  std::string name;
  std::size_t cases = 0;
  bool passed = true;
  std::string counterexample;
};

/// |a ∩ b| <= min(|a|, |b|), and the result equals a naive intersection.
PropertyOutcome prop_anti_monotonicity(std::size_t cases, std::uint64_t seed);
/// Every (k-1)-subset of every mined k-itemset is mined too.
PropertyOutcome prop_downward_closure(std::size_t cases, std::uint64_t seed);
/// Every mined support equals a direct transaction scan.
PropertyOutcome prop_support_exactness(std::size_t cases, std::uint64_t seed);
/// Accumulator partials merged in 100 random orders give one value.
PropertyOutcome prop_accumulator_permutation(std::size_t cases, std::uint64_t seed);
/// Round-robin repartition is deterministic and preserves the multiset.
PropertyOutcome prop_repartition_determinism(std::size_t cases, std::uint64_t seed);

}  // namespace rdd_eclat::testing
