#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "hillshare/core.hpp"
#include "hillshare/mms.hpp"

namespace hillshare {

/// Every row sorted non-increasing, with the sort recorded per agent.
struct OrderedReduction {
  Instance ordered;
  std::vector<std::vector<std::size_t>> permutations;  // agent -> (sorted position -> original object)
};

OrderedReduction reduce_to_ordered(const Instance& inst);

/// One recursion level of the moving knife. Per-agent vectors are indexed like
/// `agents`; values are relative to the level's renormalized disutilities.
struct KnifeLevel {
  std::vector<std::size_t> agents;  // agents still unserved at this level
  std::size_t first_position = 0;   // remaining objects are positions first_position..m-1
  std::vector<Rational> alphas;
  std::vector<Rational> guarantees;  // V_{n'}(alpha) with n' = agents.size()
  std::vector<Rational> knife_values;  // v_i(S_i) when the knives stopped
  std::size_t prefix_length = 0;       // |S_i|
  std::optional<std::size_t> removed;  // position of the last object added; empty if the pool ran out
  std::size_t chosen = 0;              // agent served at this level
  Rational served_value;               // chosen agent's value for her bundle
  std::vector<Rational> served_costs;  // C_i: each agent's value for the served bundle
  std::vector<Rational> renormalization;  // 1 - C_i
  bool exhausted = false;  // chosen agent took the whole remainder
};

struct KnifeTrace {
  std::vector<KnifeLevel> levels;
};

struct KnifeResult {
  Allocation allocation;  // over sorted positions
  KnifeTrace trace;
};

/// Recursive moving knife on an ordered instance. Each served agent i gets a
/// bundle worth at most V_{n'}(alpha_i) in the renormalized disutilities of
/// her level. Ties go to the lowest agent index. Throws ValidationError if a
/// row is not non-increasing.
KnifeResult moving_knife(const Instance& ordered);

/// Maps an allocation of sorted positions back to real objects. Positions are
/// processed from last to first; the holder of each position takes her least
/// costly object still free (lowest index on ties). Nobody's real bundle costs
/// more than her positional bundle.
Allocation lift_allocation(const OrderedReduction& red, const Allocation& ordered_alloc);

struct AgentReport {
  Rational alpha;       // largest normalized disutility in the original row
  Rational guarantee;   // V_n(alpha)
  Rational disutility;  // normalized cost of the assigned bundle
  bool satisfied = false;
};

struct AllocationReport {
  Allocation allocation;
  std::vector<AgentReport> agents;
  KnifeTrace trace;

  bool all_satisfied() const;
};

/// Reduce, cut, lift. Every agent ends at or below V_n(alpha_i).
AllocationReport allocate(const Instance& inst);

/// Per-agent report of an arbitrary allocation against V_n(alpha_i).
std::vector<AgentReport> evaluate_allocation(const Instance& inst, const Allocation& alloc);

/// Two agents: the one with the smaller Hill's share splits by her exact
/// MinMax 2-partition, the other picks. Both end at or below their own
/// Hill's share for m objects.
Allocation allocate_two_agents_tight(const Instance& inst, const SolverLimits& limits = {});

}  // namespace hillshare
