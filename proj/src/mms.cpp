#include "hillshare/mms.hpp"

#include <algorithm>
#include <boost/container_hash/hash.hpp>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <unordered_set>

namespace hillshare {
namespace {

struct Item {
  std::size_t index;  // original object index
  Rational value;
};

// Nonzero objects, heaviest first, ties by original index.
std::vector<Item> nonzero_descending(const DisutilityVector& v) {
  std::vector<Item> items;
  for (std::size_t e = 0; e < v.size(); ++e) {
    if (!v[e].is_zero()) items.push_back({e, v[e]});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.value > b.value; });
  return items;
}

// Clears denominators. Empty when the scaled total would not leave headroom in int64.
std::optional<std::vector<std::int64_t>> to_common_integers(std::span<const Rational> values, mpz_class& scale) {
  scale = 1;
  for (const Rational& x : values) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), x.raw().get_den_mpz_t());
  mpz_class total = 0;
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  const mpz_class limit = mpz_class(1) << 62;
  for (const Rational& x : values) {
    mpz_class scaled = x.raw().get_num() * (scale / x.raw().get_den());
    total += scaled;
    if (total >= limit) return std::nullopt;
    out.push_back(static_cast<std::int64_t>(scaled.get_si()));
  }
  return out;
}

std::vector<mpq_class> to_mpq(std::span<const Rational> values) {
  std::vector<mpq_class> out;
  out.reserve(values.size());
  for (const Rational& x : values) out.push_back(x.raw());
  return out;
}

template <class T>
constexpr bool kIntegral = std::is_integral_v<T>;

struct VectorHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const { return boost::hash_range(key.begin(), key.end()); }
};

// Makespan search over descending items. Finds the optimal max load and an assignment.
template <class T>
class PartitionSearch {
 public:
  PartitionSearch(std::vector<T> items, std::size_t n, const SolverLimits& limits)
      : items_(std::move(items)), n_(n), limits_(limits), loads_(n, T(0)), current_(items_.size()) {
    suffix_.assign(items_.size() + 1, T(0));
    for (std::size_t i = items_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + items_[i];
  }

  T solve(std::vector<std::size_t>& assignment) {
    lpt();
    const T& total = suffix_[0];
    if constexpr (kIntegral<T>) {
      const T share = (total + static_cast<T>(n_) - 1) / static_cast<T>(n_);
      lower_ = std::max(items_.front(), share);
    } else {
      T share = total / T(static_cast<long>(n_));
      lower_ = std::max(items_.front(), share);
    }
    if (best_ != lower_) {
      std::fill(loads_.begin(), loads_.end(), T(0));
      dfs(0);
    }
    assignment = best_assignment_;
    return best_;
  }

 private:
  void lpt() {
    std::vector<T> loads(n_, T(0));
    best_assignment_.assign(items_.size(), 0);
    for (std::size_t i = 0; i < items_.size(); ++i) {
      auto it = std::min_element(loads.begin(), loads.end());
      *it += items_[i];
      best_assignment_[i] = static_cast<std::size_t>(it - loads.begin());
    }
    best_ = *std::max_element(loads.begin(), loads.end());
  }

  bool room_for(const T& remaining) const {
    T slack(0);
    for (const T& load : loads_) {
      if constexpr (kIntegral<T>) {
        slack += best_ - 1 - load;
      } else {
        slack += best_ - load;
      }
    }
    if constexpr (kIntegral<T>) {
      return slack >= remaining;
    } else {
      return slack > remaining;
    }
  }

  // Returns true once the incumbent meets the lower bound.
  bool dfs(std::size_t i) {
    if (++nodes_ > limits_.max_nodes) {
      throw ResourceLimitError("partition search exceeded " + std::to_string(limits_.max_nodes) + " nodes");
    }
    if (i == items_.size()) {
      best_ = *std::max_element(loads_.begin(), loads_.end());
      best_assignment_ = current_;
      return best_ == lower_;
    }
    if (!room_for(suffix_[i])) return false;

    std::vector<std::int64_t> key;
    if constexpr (kIntegral<T>) {
      key.assign(loads_.begin(), loads_.end());
      std::sort(key.begin(), key.end());
      key.push_back(static_cast<std::int64_t>(i));
      if (dead_.count(key)) return false;
    }

    std::vector<std::size_t> order(n_);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return loads_[a] < loads_[b]; });
    const T& w = items_[i];
    for (std::size_t pos = 0; pos < n_; ++pos) {
      const std::size_t b = order[pos];
      if (pos > 0 && loads_[b] == loads_[order[pos - 1]]) continue;
      if (!(loads_[b] + w < best_)) break;  // loads only grow along `order`
      loads_[b] += w;
      current_[i] = b;
      const bool done = dfs(i + 1);
      loads_[b] -= w;
      if (done) return true;
    }

    if constexpr (kIntegral<T>) {
      if (dead_.size() < kCacheCap) dead_.insert(std::move(key));
    }
    return false;
  }

  static constexpr std::size_t kCacheCap = 2'000'000;

  std::vector<T> items_;
  std::size_t n_;
  SolverLimits limits_;
  std::vector<T> loads_;
  std::vector<T> suffix_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_assignment_;
  T best_{};
  T lower_{};
  std::uint64_t nodes_ = 0;
  std::unordered_set<std::vector<std::int64_t>, VectorHash> dead_;
};

}  // namespace

MmsResult exact_mms_partition(const DisutilityVector& v, std::size_t n, const SolverLimits& limits) {
  if (n == 0) throw ValidationError("agent count must be positive");
  const std::vector<Item> items = nonzero_descending(v);
  Allocation alloc;
  alloc.bundles.assign(n, {});
  auto finish = [&](Rational value) {
    for (std::size_t e = 0; e < v.size(); ++e) {
      if (v[e].is_zero()) alloc.bundles[0].push_back(e);
    }
    for (auto& bundle : alloc.bundles) std::sort(bundle.begin(), bundle.end());
    return MmsResult{std::move(value), std::move(alloc)};
  };

  if (items.empty()) return finish(Rational(0));
  if (items.size() <= n) {
    for (std::size_t i = 0; i < items.size(); ++i) alloc.bundles[i].push_back(items[i].index);
    return finish(items.front().value);
  }
  if (items.size() > limits.max_objects) {
    throw ResourceLimitError("exact MinMaxShare limited to " + std::to_string(limits.max_objects) +
                             " nonzero objects, got " + std::to_string(items.size()));
  }

  std::vector<Rational> values;
  values.reserve(items.size());
  for (const Item& it : items) values.push_back(it.value);

  std::vector<std::size_t> assignment;
  Rational value;
  mpz_class scale;
  if (auto ints = to_common_integers(values, scale)) {
    PartitionSearch<std::int64_t> search(std::move(*ints), n, limits);
    const std::int64_t best = search.solve(assignment);
    value = Rational(mpz_class(static_cast<long>(best)), scale);
  } else {
    PartitionSearch<mpq_class> search(to_mpq(values), n, limits);
    value = Rational(search.solve(assignment));
  }
  for (std::size_t i = 0; i < items.size(); ++i) alloc.bundles[assignment[i]].push_back(items[i].index);
  return finish(std::move(value));
}

Rational exact_mms(const DisutilityVector& v, std::size_t n, const SolverLimits& limits) {
  return exact_mms_partition(v, n, limits).value;
}

bool fits_under(const DisutilityVector& v, std::size_t n, const Rational& threshold, const SolverLimits& limits) {
  if (n == 0) throw ValidationError("agent count must be positive");
  const Rational total = v.total();
  if (threshold >= total) return true;
  if (threshold < v.alpha() || threshold * Rational(static_cast<std::int64_t>(n)) < total) return false;
  return exact_mms(v, n, limits) <= threshold;
}

std::vector<Rational> sorted_loads(const DisutilityVector& v, const Allocation& alloc) {
  std::vector<Rational> loads;
  loads.reserve(alloc.size());
  for (const auto& bundle : alloc.bundles) loads.push_back(v.cost(bundle));
  std::sort(loads.begin(), loads.end(), std::greater<>());
  return loads;
}

namespace {

template <class T>
class LexSearch {
 public:
  LexSearch(std::vector<T> w, std::size_t n) : w_(std::move(w)), n_(n), loads_(n, T(0)), rgs_(w_.size()) {}

  std::vector<std::size_t> run() {
    recurse(0, 0);
    return best_rgs_;
  }

 private:
  void recurse(std::size_t i, std::size_t used) {
    if (i == w_.size()) {
      std::vector<T> sorted = loads_;
      std::sort(sorted.begin(), sorted.end(), std::greater<>());
      if (best_.empty() || sorted < best_) {  // strict: the first string wins ties
        best_ = std::move(sorted);
        best_rgs_ = rgs_;
      }
      return;
    }
    const std::size_t top = std::min(used, n_ - 1);
    for (std::size_t b = 0; b <= top; ++b) {
      loads_[b] += w_[i];
      if (best_.empty() || !(best_.front() < loads_[b])) {
        rgs_[i] = b;
        recurse(i + 1, std::max(used, b + 1));
      }
      loads_[b] -= w_[i];
    }
  }

  std::vector<T> w_;
  std::size_t n_;
  std::vector<T> loads_;
  std::vector<std::size_t> rgs_;
  std::vector<T> best_;
  std::vector<std::size_t> best_rgs_;
};

}  // namespace

Allocation lex_minmax(const DisutilityVector& v, std::size_t n, std::size_t max_objects) {
  if (n == 0) throw ValidationError("agent count must be positive");
  if (v.size() > max_objects) {
    throw ResourceLimitError("lexicographic MinMax enumeration limited to " + std::to_string(max_objects) +
                             " objects, got " + std::to_string(v.size()));
  }
  Allocation alloc;
  alloc.bundles.assign(n, {});
  if (v.empty()) return alloc;

  std::vector<std::size_t> rgs;
  mpz_class scale;
  if (auto ints = to_common_integers(v.values(), scale)) {
    rgs = LexSearch<std::int64_t>(std::move(*ints), n).run();
  } else {
    rgs = LexSearch<mpq_class>(to_mpq(v.values()), n).run();
  }
  for (std::size_t e = 0; e < rgs.size(); ++e) alloc.bundles[rgs[e]].push_back(e);
  return alloc;
}

}  // namespace hillshare
