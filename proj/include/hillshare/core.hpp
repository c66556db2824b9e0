#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hillshare/rational.hpp"

namespace hillshare {

/// Malformed input: negative disutilities, ragged rows, bad allocations, CSV errors.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A query outside the domain where a formula is defined (e.g. alpha * m < 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The exact search oracles refuse instances above their configured scale.
class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonnegative additive disutilities over m objects.
class DisutilityVector {
 public:
  DisutilityVector() = default;
  /// Throws ValidationError on a negative entry, or when `normalized` is set
  /// and the entries do not sum to exactly 1.
  explicit DisutilityVector(std::vector<Rational> values, bool normalized = false);

  std::span<const Rational> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  bool normalized() const { return normalized_; }

  /// Largest single-object disutility (0 for an empty vector).
  Rational alpha() const;
  Rational total() const;
  /// v(S) for a bundle of object indices.
  Rational cost(std::span<const std::size_t> bundle) const;
  bool all_zero() const;

  friend bool operator==(const DisutilityVector&, const DisutilityVector&) = default;

 private:
  std::vector<Rational> values_;
  bool normalized_ = false;
};

/// n agents x m objects, every row scaled to total 1. Rows whose original total
/// was 0 stay all-zero and are flagged through a zero scale factor.
class Instance {
 public:
  Instance() = default;
  /// Rows must already be normalized (or all-zero with scale factor 0).
  Instance(std::vector<DisutilityVector> rows, std::vector<Rational> scale_factors);

  std::size_t n() const { return rows_.size(); }
  std::size_t m() const { return m_; }
  const DisutilityVector& row(std::size_t agent) const { return rows_.at(agent); }
  std::span<const DisutilityVector> rows() const { return rows_; }
  const Rational& scale_factor(std::size_t agent) const { return scale_factors_.at(agent); }
  bool is_zero_row(std::size_t agent) const { return scale_factors_.at(agent).is_zero(); }

 private:
  std::vector<DisutilityVector> rows_;
  std::vector<Rational> scale_factors_;
  std::size_t m_ = 0;
};

using RawMatrix = std::vector<std::vector<Rational>>;

/// Divides every row by its total and records the totals as scale factors.
Instance normalize(const RawMatrix& raw);

/// A partition of object indices 0..m-1 into n (possibly empty) bundles.
struct Allocation {
  std::vector<std::vector<std::size_t>> bundles;

  std::size_t size() const { return bundles.size(); }
  friend bool operator==(const Allocation&, const Allocation&) = default;
};

/// Throws ValidationError unless `alloc` has n bundles that partition 0..m-1.
void validate_allocation(const Allocation& alloc, std::size_t n, std::size_t m);

struct OrderedVector {
  DisutilityVector values;              // non-increasing
  std::vector<std::size_t> permutation;  // sorted position -> original index
};

/// Stable non-increasing sort; ties keep original index order.
OrderedVector order_vector(const DisutilityVector& v);

enum class RegionTag {
  D,   // decreasing piece of Hill's share
  I,   // increasing piece of Hill's share
  NI,  // flat piece of the guarantee (open interval)
  IV,  // increasing piece of the guarantee (closed interval)
};

std::string to_string(RegionTag tag);

struct RegionIndex {
  std::int64_t k = 0;
  RegionTag tag = RegionTag::D;
  friend bool operator==(const RegionIndex&, const RegionIndex&) = default;
};

std::string to_string(const RegionIndex& r);

/// Locates alpha in the D(n,k) / I(n,k) tiling of (0,1]:
///   D(n,k) = (1/(kn+n+1), (k+2)/(n(k+1)^2+k+2)]
///   I(n,k) = ((k+2)/(n(k+1)^2+k+2), 1/(kn+1)]
RegionIndex classify_share(std::int64_t n, const Rational& alpha);

/// Locates alpha in the NI(n,k) / IV(n,k) tiling used by the guarantee V_n:
///   NI(n,k) = (1/((k+1)n+1), (k+2)/((k+1)((k+1)n+1)))
///   IV(n,k) = [(k+2)/((k+1)((k+1)n+1)), 1/(kn+1)]
/// The k agrees with classify_share for the same (n, alpha).
RegionIndex classify_guarantee(std::int64_t n, const Rational& alpha);

/// Instance CSV: optional header line (e.g. object_1,...,object_m), then one
/// row of nonnegative decimals or p/q fractions per agent. Blank lines and
/// lines starting with '#' are skipped. Errors carry 1-based line numbers.
RawMatrix read_instance_csv(std::istream& in);
RawMatrix read_instance_csv_file(const std::string& path);
void write_instance_csv(std::ostream& out, std::span<const DisutilityVector> rows);

}  // namespace hillshare
