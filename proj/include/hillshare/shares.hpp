#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "hillshare/core.hpp"

namespace hillshare {

/// (n, m, alpha): n agents share m objects, the worst object costs alpha.
/// An empty `m` means the object count is unrestricted.
struct ShareQuery {
  std::int64_t n = 2;
  std::optional<std::int64_t> m;
  Rational alpha;

  static ShareQuery unrestricted(std::int64_t n, Rational alpha) { return {n, std::nullopt, std::move(alpha)}; }
  static ShareQuery with_objects(std::int64_t n, std::int64_t m, Rational alpha) { return {n, m, std::move(alpha)}; }

  /// Throws DomainError unless n >= 2, 0 < alpha <= 1 and m >= ceil(1/alpha).
  void validate() const;
  /// ceil(1/alpha): the fewest objects a normalized vector with max alpha can have.
  std::int64_t min_objects() const;
  /// Object count beyond which Hill's share stops changing: ceil(2/alpha) - 1.
  std::int64_t saturation_objects() const;
};

/// Worst-case MinMaxShare over normalized vectors whose largest entry is alpha
/// (Hill's share for bads). Piecewise in the D/I tiling, with a dedicated
/// three-piece branch for two agents and alpha in (1/5, 1/3].
Rational hill_share(const ShareQuery& q);

/// Best-case MinMaxShare over the same family.
Rational mms_lower_bound(const ShareQuery& q);

/// Monotone cover of Hill's share: the per-agent guarantee V_n(alpha).
/// Defined on [0, 1]; V_n(0) = 1/n (limit of both branches) and V_1 = 1.
Rational guarantee(std::int64_t n, const Rational& alpha);

/// hill_share / mms_lower_bound.
Rational theoretical_ratio(const ShareQuery& q);

/// A single-agent instance whose exact MinMaxShare attains a bound.
struct WitnessInstance {
  Instance instance;
  Rational claimed_mms;
  std::string construction;

  const DisutilityVector& vector() const { return instance.row(0); }
};

/// Worst case: a vector in the query's class with MinMaxShare == hill_share(q).
WitnessInstance witness_upper(const ShareQuery& q);

/// Best case: a vector in the query's class with MinMaxShare == mms_lower_bound(q).
WitnessInstance witness_lower(const ShareQuery& q);

}  // namespace hillshare
