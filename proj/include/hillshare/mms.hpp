#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hillshare/core.hpp"

namespace hillshare {

/// Scale guard for the exact partition search. Raise the limits to trade time
/// for coverage; exceeding them throws ResourceLimitError.
struct SolverLimits {
  std::size_t max_objects = 40;        // nonzero objects
  std::uint64_t max_nodes = 50'000'000;  // search nodes per call
};

struct MmsResult {
  Rational value;
  Allocation allocation;  // one optimal n-partition, bundles over original indices
};

/// MinMaxShare: the smallest achievable maximum bundle load over n-partitions.
/// Branch and bound on the descending-sorted nonzero objects, seeded by LPT.
/// Runs on 64-bit integers after clearing denominators when the total allows.
MmsResult exact_mms_partition(const DisutilityVector& v, std::size_t n, const SolverLimits& limits = {});
Rational exact_mms(const DisutilityVector& v, std::size_t n, const SolverLimits& limits = {});

/// True iff some n-partition keeps every bundle at or below `threshold`.
bool fits_under(const DisutilityVector& v, std::size_t n, const Rational& threshold,
                const SolverLimits& limits = {});

/// Bundle loads sorted non-increasing.
std::vector<Rational> sorted_loads(const DisutilityVector& v, const Allocation& alloc);

/// Lexicographically smallest sorted load vector over all n-partitions.
/// Among equal load vectors the partition with the smallest restricted-growth
/// string (object i -> block label, labels in order of first use) is returned;
/// block b becomes bundle b. Exhaustive, so m is capped (default 12).
Allocation lex_minmax(const DisutilityVector& v, std::size_t n, std::size_t max_objects = 12);

}  // namespace hillshare
