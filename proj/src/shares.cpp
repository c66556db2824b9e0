#include "hillshare/shares.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace hillshare {
namespace {

const Rational kOne(1);

bool special_pair(std::int64_t n, const RegionIndex& r) { return n == 2 && r.k == 1; }

// Breakpoints of the two-agent pieces on (1/5, 1/3].
const Rational k7_27(7, 27);
const Rational k2_7(2, 7);
const Rational k3_11(3, 11);

std::vector<Rational> repeat(const Rational& value, std::int64_t count) {
  return std::vector<Rational>(static_cast<std::size_t>(count), value);
}

void append(std::vector<Rational>& dst, const std::vector<Rational>& src) { dst.insert(dst.end(), src.begin(), src.end()); }

WitnessInstance make_witness(std::vector<Rational> values, const ShareQuery& q, Rational claimed,
                             std::string construction) {
  if (q.m) {
    if (static_cast<std::int64_t>(values.size()) > *q.m) {
      throw std::logic_error("witness construction needs more objects than the query allows");
    }
    values.resize(static_cast<std::size_t>(*q.m), Rational(0));
  }
  DisutilityVector row(std::move(values), true);
  if (row.alpha() != q.alpha) throw std::logic_error("witness construction does not attain alpha");
  return {Instance({std::move(row)}, {kOne}), std::move(claimed), std::move(construction)};
}

// ceil(1/alpha) - 1 objects at alpha, one object with the remainder.
std::vector<Rational> heavy_block_plus_remainder(const ShareQuery& q) {
  const std::int64_t heavy = q.min_objects() - 1;
  std::vector<Rational> values = repeat(q.alpha, heavy);
  values.push_back(kOne - Rational(heavy) * q.alpha);
  return values;
}

// One object at alpha and `count` objects splitting the rest evenly.
std::vector<Rational> one_heavy_plus_even(const Rational& alpha, std::int64_t count) {
  std::vector<Rational> values{alpha};
  append(values, repeat((kOne - alpha) / Rational(count), count));
  return values;
}

}  // namespace

void ShareQuery::validate() const {
  if (n < 2) throw DomainError("n must be at least 2, got " + std::to_string(n));
  if (alpha.sign() <= 0 || alpha > kOne) throw DomainError("alpha must lie in (0, 1], got " + alpha.str());
  if (m) {
    const std::int64_t need = min_objects();
    if (*m < need) {
      throw DomainError("m = " + std::to_string(*m) + " violates m >= ceil(1/alpha) = " + std::to_string(need) +
                        " for alpha = " + alpha.str());
    }
  }
}

std::int64_t ShareQuery::min_objects() const { return (kOne / alpha).ceil_int(); }

std::int64_t ShareQuery::saturation_objects() const { return (Rational(2) / alpha).ceil_int() - 1; }

Rational hill_share(const ShareQuery& q) {
  q.validate();
  const std::int64_t n = q.n;
  const Rational& a = q.alpha;
  const RegionIndex r = classify_share(n, a);
  const std::int64_t k = r.k;

  if (special_pair(n, r)) {
    const std::int64_t m = q.m.value_or(6);
    if (m == 3) return Rational(2, 3);  // only alpha = 1/3 is valid here
    if (m == 4) return Rational(2) * a;
    const Rational falling = (Rational(3) - Rational(3) * a) / Rational(4);
    if (m == 5) return a <= k3_11 ? falling : Rational(2) * a;
    if (a <= k7_27) return falling;
    if (a <= k2_7) return a + (Rational(2) - Rational(2) * a) / Rational(5);
    return Rational(2) * a;
  }

  if (r.tag == RegionTag::D && (!q.m || *q.m >= k * n + n + 1)) {
    return Rational(k + 2, k + 1) * (kOne - a) / Rational(n);
  }
  return Rational(k + 1) * a;
}

Rational mms_lower_bound(const ShareQuery& q) {
  q.validate();
  const std::int64_t n = q.n;
  const Rational& a = q.alpha;
  const Rational share(1, n);
  if (a > share) return a;
  // 1/((k+1)n) < alpha <= 1/(kn) with k >= 1
  const Rational t = kOne / (Rational(n) * a);
  const std::int64_t k = t.floor_int();
  if (t.is_integer()) return share;
  if (!q.m || *q.m >= k * n + n) return share;
  const std::int64_t m = *q.m;
  return Rational(k) * a + (kOne - Rational(k * n) * a) / Rational(m - k * n);
}

Rational guarantee(std::int64_t n, const Rational& alpha) {
  if (n < 1) throw DomainError("n must be positive");
  if (alpha.sign() < 0 || alpha > kOne) throw DomainError("alpha must lie in [0, 1], got " + alpha.str());
  if (alpha.is_zero()) return Rational(1, n);
  const RegionIndex r = classify_guarantee(n, alpha);
  if (r.tag == RegionTag::NI) return Rational(r.k + 2, (r.k + 1) * n + 1);
  return Rational(r.k + 1) * alpha;
}

Rational theoretical_ratio(const ShareQuery& q) { return hill_share(q) / mms_lower_bound(q); }

WitnessInstance witness_upper(const ShareQuery& q) {
  const Rational claimed = hill_share(q);  // validates
  const std::int64_t n = q.n;
  const Rational& a = q.alpha;
  const RegionIndex r = classify_share(n, a);
  const std::int64_t k = r.k;

  if (special_pair(n, r)) {
    const std::int64_t m = q.m.value_or(6);
    if (m <= 4 || (m == 5 && a > k3_11) || (m >= 6 && a > k2_7)) {
      return make_witness(heavy_block_plus_remainder(q), q, claimed, "heavy-block-plus-remainder");
    }
    if (m == 5 || a <= k7_27) return make_witness(one_heavy_plus_even(a, 4), q, claimed, "one-heavy-plus-four");
    return make_witness(one_heavy_plus_even(a, 5), q, claimed, "one-heavy-plus-five");
  }

  if (r.tag == RegionTag::D && (!q.m || *q.m >= k * n + n + 1)) {
    return make_witness(one_heavy_plus_even(a, n * (k + 1)), q, claimed, "one-heavy-plus-even-split");
  }
  if (r.tag == RegionTag::I && !q.m) {
    // kn+1 objects at alpha, the rest spread over n-1 objects
    std::vector<Rational> values = repeat(a, k * n + 1);
    append(values, repeat((kOne - Rational(k * n + 1) * a) / Rational(n - 1), n - 1));
    return make_witness(std::move(values), q, claimed, "heavy-block-plus-even-tail");
  }
  return make_witness(heavy_block_plus_remainder(q), q, claimed, "heavy-block-plus-remainder");
}

WitnessInstance witness_lower(const ShareQuery& q) {
  const Rational claimed = mms_lower_bound(q);  // validates
  const std::int64_t n = q.n;
  const Rational& a = q.alpha;
  const Rational share(1, n);

  if (a > share) {
    // floor(1/alpha) objects at alpha plus the remainder; at most n objects
    const std::int64_t heavy = (kOne / a).floor_int();
    std::vector<Rational> values = repeat(a, heavy);
    const Rational rest = kOne - Rational(heavy) * a;
    if (!rest.is_zero()) values.push_back(rest);
    return make_witness(std::move(values), q, claimed, "few-heavy");
  }
  const Rational t = kOne / (Rational(n) * a);
  const std::int64_t k = t.floor_int();
  if (t.is_integer()) return make_witness(repeat(a, k * n), q, claimed, "exact-multiple");
  if (!q.m || *q.m >= k * n + n) {
    std::vector<Rational> values = repeat(a, k * n);
    append(values, repeat(share - Rational(k) * a, n));
    return make_witness(std::move(values), q, claimed, "balanced-fill");
  }
  const std::int64_t m = *q.m;
  std::vector<Rational> values = repeat(a, k * n);
  append(values, repeat((kOne - Rational(k * n) * a) / Rational(m - k * n), m - k * n));
  return make_witness(std::move(values), q, claimed, "restricted-fill");
}

}  // namespace hillshare
