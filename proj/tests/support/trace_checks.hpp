#pragma once
// Per-level audits of a moving-knife trace.

#include <string>
#include <vector>

#include "hillshare/allocator.hpp"
#include "hillshare/shares.hpp"

namespace trace_checks {

using namespace hillshare;

struct Findings {
  std::vector<std::string> problems;
  std::size_t served_checks = 0;  // (level, agent) pairs checked for the served-cost bound
  std::size_t region_checks = 0;  // (level, agent) pairs checked for the region mapping
};

// Served-cost bound: an unserved agent with alpha > 0 values the served bundle
// at least (1 - V)/(n' - 1). Region mapping: alpha / (1 - (1 - V)/(n' - 1))
// stays in the same guarantee region for n' - 1 agents, and the next level's
// guarantee, scaled back by 1 - C_i, does not exceed this level's.
inline Findings audit(const KnifeTrace& trace) {
  Findings f;
  for (std::size_t l = 0; l < trace.levels.size(); ++l) {
    const KnifeLevel& lv = trace.levels[l];
    if (lv.exhausted) continue;
    const auto np = static_cast<std::int64_t>(lv.agents.size());
    for (std::size_t a = 0; a < lv.agents.size(); ++a) {
      if (lv.agents[a] == lv.chosen || lv.alphas[a].is_zero()) continue;
      const Rational bound = (Rational(1) - lv.guarantees[a]) / Rational(np - 1);
      ++f.served_checks;
      if (lv.served_costs[a] < bound) {
        f.problems.push_back("level " + std::to_string(l) + " agent " + std::to_string(lv.agents[a]) +
                             ": served cost " + lv.served_costs[a].str() + " < " + bound.str());
      }
      if (np < 3) continue;
      const Rational mapped = lv.alphas[a] / (Rational(1) - bound);
      ++f.region_checks;
      if (mapped > Rational(1) ||
          classify_guarantee(np - 1, mapped) != classify_guarantee(np, lv.alphas[a])) {
        f.problems.push_back("level " + std::to_string(l) + " agent " + std::to_string(lv.agents[a]) +
                             ": region of " + lv.alphas[a].str() + " not preserved");
        continue;
      }
      if (l + 1 < trace.levels.size()) {
        // the guarantee inherited from the next level, scaled back, stays within this level's
        const KnifeLevel& next = trace.levels[l + 1];
        for (std::size_t b = 0; b < next.agents.size(); ++b) {
          if (next.agents[b] != lv.agents[a]) continue;
          const Rational carried = lv.renormalization[a] * next.guarantees[b];
          if (carried > lv.guarantees[a]) {
            f.problems.push_back("level " + std::to_string(l + 1) + " agent " + std::to_string(lv.agents[a]) +
                                 ": inherited guarantee " + carried.str() + " above " + lv.guarantees[a].str());
          }
        }
      }
    }
  }
  return f;
}

}  // namespace trace_checks
