#include "hillshare/allocator.hpp"

#include <algorithm>
#include <numeric>

#include "hillshare/shares.hpp"

namespace hillshare {
namespace {

std::int64_t as_count(std::size_t n) { return static_cast<std::int64_t>(n); }

void require_ordered(const Instance& inst) {
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const auto& row = inst.row(i);
    for (std::size_t e = 1; e < row.size(); ++e) {
      if (row[e] > row[e - 1]) {
        throw ValidationError("agent " + std::to_string(i + 1) + " is not ordered at object " +
                              std::to_string(e + 1));
      }
    }
  }
}

std::vector<std::size_t> range(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out(to - from);
  std::iota(out.begin(), out.end(), from);
  return out;
}

}  // namespace

OrderedReduction reduce_to_ordered(const Instance& inst) {
  std::vector<DisutilityVector> rows;
  std::vector<Rational> scales;
  std::vector<std::vector<std::size_t>> perms;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    OrderedVector ov = order_vector(inst.row(i));
    rows.push_back(std::move(ov.values));
    perms.push_back(std::move(ov.permutation));
    scales.push_back(inst.scale_factor(i));
  }
  return {Instance(std::move(rows), std::move(scales)), std::move(perms)};
}

KnifeResult moving_knife(const Instance& ordered) {
  require_ordered(ordered);
  const std::size_t m = ordered.m();
  KnifeResult result;
  result.allocation.bundles.assign(ordered.n(), {});
  auto& bundles = result.allocation.bundles;

  std::vector<std::size_t> active = range(0, ordered.n());
  std::size_t start = 0;
  while (true) {
    const std::size_t np = active.size();
    if (np == 1) {
      bundles[active.front()] = range(start, m);
      break;
    }

    KnifeLevel level;
    level.agents = active;
    level.first_position = start;
    // current disutilities: the remaining suffix rescaled to total 1
    std::vector<Rational> remaining(np);
    for (std::size_t a = 0; a < np; ++a) {
      const auto& row = ordered.row(active[a]);
      for (std::size_t e = start; e < m; ++e) remaining[a] += row[e];
    }
    auto current = [&](std::size_t a, std::size_t e) {
      if (remaining[a].is_zero()) return Rational(0);
      return ordered.row(active[a])[e] / remaining[a];
    };
    for (std::size_t a = 0; a < np; ++a) {
      level.alphas.push_back(start < m ? current(a, start) : Rational(0));
      level.guarantees.push_back(guarantee(as_count(np), level.alphas.back()));
    }

    std::vector<Rational> knife(np);
    auto someone_under = [&]() -> std::optional<std::size_t> {
      for (std::size_t a = 0; a < np; ++a) {
        if (knife[a] <= level.guarantees[a]) return a;
      }
      return std::nullopt;
    };
    std::size_t t = 0;
    while (someone_under() && start + t < m) {
      for (std::size_t a = 0; a < np; ++a) knife[a] += current(a, start + t);
      ++t;
    }
    level.knife_values = knife;
    level.prefix_length = t;

    std::size_t served_end;  // one past the last served position
    std::size_t k;
    if (auto under = someone_under()) {
      k = *under;
      level.exhausted = true;
      served_end = m;
    } else {
      const std::size_t last = start + t - 1;
      level.removed = last;
      k = np;
      for (std::size_t a = 0; a < np; ++a) {
        if (knife[a] - current(a, last) <= level.guarantees[a]) {
          k = a;
          break;
        }
      }
      if (k == np) throw std::logic_error("moving knife found no agent to serve");
      served_end = last;
    }

    level.chosen = active[k];
    for (std::size_t a = 0; a < np; ++a) {
      Rational cost(0);
      for (std::size_t e = start; e < served_end; ++e) cost += current(a, e);
      level.renormalization.push_back(Rational(1) - cost);
      level.served_costs.push_back(std::move(cost));
    }
    level.served_value = level.served_costs[k];
    bundles[active[k]] = range(start, served_end);
    result.trace.levels.push_back(std::move(level));

    if (served_end == m) break;  // the others keep empty bundles
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(k));
    start = served_end;
    if (np == 2) {
      bundles[active.front()] = range(start, m);
      break;
    }
  }
  return result;
}

Allocation lift_allocation(const OrderedReduction& red, const Allocation& ordered_alloc) {
  const std::size_t n = red.ordered.n();
  const std::size_t m = red.ordered.m();
  validate_allocation(ordered_alloc, n, m);

  std::vector<std::size_t> holder(m);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t pos : ordered_alloc.bundles[a]) holder[pos] = a;
  }
  // original disutility of agent a for object e
  std::vector<std::vector<Rational>> original(n, std::vector<Rational>(m));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t pos = 0; pos < m; ++pos) original[a][red.permutations[a][pos]] = red.ordered.row(a)[pos];
  }

  Allocation lifted;
  lifted.bundles.assign(n, {});
  std::vector<char> taken(m, 0);
  for (std::size_t pos = m; pos-- > 0;) {
    const std::size_t a = holder[pos];
    std::size_t pick = m;
    for (std::size_t e = 0; e < m; ++e) {
      if (!taken[e] && (pick == m || original[a][e] < original[a][pick])) pick = e;
    }
    taken[pick] = 1;
    lifted.bundles[a].push_back(pick);
  }
  for (auto& bundle : lifted.bundles) std::sort(bundle.begin(), bundle.end());
  return lifted;
}

bool AllocationReport::all_satisfied() const {
  return std::all_of(agents.begin(), agents.end(), [](const AgentReport& r) { return r.satisfied; });
}

std::vector<AgentReport> evaluate_allocation(const Instance& inst, const Allocation& alloc) {
  validate_allocation(alloc, inst.n(), inst.m());
  std::vector<AgentReport> out;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    AgentReport r;
    r.alpha = inst.row(i).alpha();
    r.guarantee = guarantee(as_count(inst.n()), r.alpha);
    r.disutility = inst.row(i).cost(alloc.bundles[i]);
    r.satisfied = r.disutility <= r.guarantee;
    out.push_back(std::move(r));
  }
  return out;
}

AllocationReport allocate(const Instance& inst) {
  OrderedReduction red = reduce_to_ordered(inst);
  KnifeResult knife = moving_knife(red.ordered);
  AllocationReport report;
  report.allocation = lift_allocation(red, knife.allocation);
  report.agents = evaluate_allocation(inst, report.allocation);
  report.trace = std::move(knife.trace);
  return report;
}

Allocation allocate_two_agents_tight(const Instance& inst, const SolverLimits& limits) {
  if (inst.n() != 2) throw ValidationError("the two-agent procedure needs exactly 2 agents");
  const std::int64_t m = as_count(inst.m());

  // zero rows never divide; between two nonzero rows the smaller share divides
  std::size_t divider = 0;
  if (inst.is_zero_row(0)) {
    divider = 1;
  } else if (!inst.is_zero_row(1)) {
    const Rational s0 = hill_share(ShareQuery::with_objects(2, m, inst.row(0).alpha()));
    const Rational s1 = hill_share(ShareQuery::with_objects(2, m, inst.row(1).alpha()));
    if (s1 < s0) divider = 1;
  }
  const std::size_t chooser = 1 - divider;

  Allocation split = exact_mms_partition(inst.row(divider), 2, limits).allocation;
  const auto& cv = inst.row(chooser);
  const auto& dv = inst.row(divider);
  const Rational c0 = cv.cost(split.bundles[0]);
  const Rational c1 = cv.cost(split.bundles[1]);
  std::size_t pick;
  if (c0 != c1) {
    pick = c0 < c1 ? 0 : 1;
  } else {
    pick = dv.cost(split.bundles[1]) > dv.cost(split.bundles[0]) ? 1 : 0;
  }
  Allocation alloc;
  alloc.bundles.assign(2, {});
  alloc.bundles[chooser] = split.bundles[pick];
  alloc.bundles[divider] = split.bundles[1 - pick];
  return alloc;
}

}  // namespace hillshare
