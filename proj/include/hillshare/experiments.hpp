#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hillshare/core.hpp"
#include "hillshare/mms.hpp"

namespace hillshare {

enum class Arithmetic { Exact, Float };

/// Row generators for random instances.
enum class Distribution {
  UniformSegments,  // m-1 uniform cuts of [0,1]
  PowerLaw,         // weights 1/x^2, x uniform in [1, 1000]
  ManyZeros,        // uniform segments with about 60% of entries zeroed
};

std::string to_string(Arithmetic a);
std::string to_string(Distribution d);

struct ExperimentConfig {
  std::int64_t n = 2;
  std::vector<std::int64_t> m_values;
  std::int64_t instances_per_setting = 100;  // 0 gives an empty histogram
  std::uint64_t seed = 42;
  Arithmetic arithmetic = Arithmetic::Float;

  void validate() const;
  /// "# n=6 m=8,9,10 instances=100 seed=42 arithmetic=float rng=mt19937_64"
  std::string header() const;
};

/// Every (seed, n, m) setting draws from its own std::mt19937_64, seeded with
/// std::seed_seq{seed low 32 bits, seed high 32 bits, n, m}.
std::mt19937_64 make_rng(std::uint64_t seed, std::int64_t n, std::int64_t m);

/// Lengths of the m segments cut from [0,1] by m-1 uniform points.
/// Exact mode draws 32-bit cut points over 2^32. Float mode draws 53-bit
/// doubles and rounds the segments to multiples of 1e-9 (the largest absorbs
/// the rounding so the sum stays exactly 1).
DisutilityVector gen_synthetic(std::size_t m, std::mt19937_64& rng, Arithmetic arithmetic = Arithmetic::Exact);

/// One unnormalized row of nonnegative exact values (possibly all zero).
std::vector<Rational> gen_row(std::size_t m, std::mt19937_64& rng, Distribution dist);

/// n rows drawn independently from `dist`.
RawMatrix gen_instance(std::size_t n, std::size_t m, std::mt19937_64& rng, Distribution dist);

struct RatioRecord {
  std::int64_t n = 0;
  std::int64_t m = 0;
  Rational alpha;
  Rational hill;
  Rational mms;
  Rational ratio;
};

/// Hill's share for (n, m, max entry) against the exact MinMaxShare of v.
RatioRecord instance_ratio(const DisutilityVector& v, std::int64_t n, const SolverLimits& limits = {});

/// Half-open buckets [1.0, 1.1), [1.1, 1.2), ... indexed from 0.
std::size_t ratio_bucket(const Rational& ratio);
Rational bucket_low(std::size_t bucket);
Rational bucket_high(std::size_t bucket);

struct RatioHistogram {
  std::int64_t n = 0;
  std::map<std::int64_t, std::vector<std::size_t>> counts;  // m -> per-bucket counts
  std::vector<RatioRecord> records;

  std::size_t total() const;
  std::size_t count_in(std::size_t bucket) const;  // summed over m
};

RatioHistogram run_histogram(const ExperimentConfig& cfg, const SolverLimits& limits = {});

struct CurveRow {
  Rational alpha;
  Rational upper;      // Hill's share
  Rational lower;      // best-case MinMaxShare
  Rational guarantee;  // V_n
  Rational ratio;
};

/// Grid points outside the query domain are skipped and reported in `warnings`.
std::vector<CurveRow> curve_samples(std::int64_t n, const std::vector<Rational>& grid, std::optional<std::int64_t> m,
                                    std::vector<std::string>* warnings = nullptr);

/// Normalized rows of a valuation CSV. All-zero rows are dropped with a warning.
std::vector<DisutilityVector> ingest_csv(const std::string& path, std::vector<std::string>* warnings = nullptr);

/// Open intervals outside of which the unrestricted ratio never exceeds 4/3.
struct OpenInterval {
  Rational lo;
  Rational hi;
  bool contains(const Rational& x) const { return lo < x && x < hi; }
  Rational width() const { return hi - lo; }
};
std::vector<OpenInterval> high_ratio_ranges(std::int64_t n);

void write_histogram_csv(std::ostream& out, const ExperimentConfig& cfg, const RatioHistogram& hist);
void write_records_csv(std::ostream& out, const std::string& header, const std::vector<RatioRecord>& records);
void write_curve_csv(std::ostream& out, const std::string& header, const std::vector<CurveRow>& rows);

}  // namespace hillshare
