#include "hillshare/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hillshare/shares.hpp"

namespace hillshare {

std::string to_string(Arithmetic a) { return a == Arithmetic::Exact ? "exact" : "float"; }

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::UniformSegments: return "uniform";
    case Distribution::PowerLaw: return "power-law";
    case Distribution::ManyZeros: return "many-zeros";
  }
  return "?";
}

void ExperimentConfig::validate() const {
  if (n < 2) throw DomainError("experiments need n >= 2");
  if (instances_per_setting < 0) throw DomainError("instance count must be nonnegative");
  for (std::int64_t m : m_values) {
    if (m < 1) throw DomainError("object counts must be positive, got " + std::to_string(m));
  }
}

std::string ExperimentConfig::header() const {
  std::ostringstream out;
  out << "# n=" << n << " m=";
  for (std::size_t i = 0; i < m_values.size(); ++i) out << (i ? "," : "") << m_values[i];
  out << " instances=" << instances_per_setting << " seed=" << seed << " arithmetic=" << to_string(arithmetic)
      << " rng=mt19937_64";
  return out.str();
}

std::mt19937_64 make_rng(std::uint64_t seed, std::int64_t n, std::int64_t m) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(m)};
  return std::mt19937_64(seq);
}

namespace {

std::string one_decimal(std::size_t tenths) { return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10); }

constexpr std::uint64_t kFloatGrid = 1'000'000'000;

double unit_double(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::vector<Rational> exact_segments(std::size_t m, std::mt19937_64& rng) {
  const std::int64_t denom = std::int64_t{1} << 32;
  std::vector<std::int64_t> cuts;
  for (std::size_t i = 1; i < m; ++i) cuts.push_back(static_cast<std::int64_t>(rng() >> 32));
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> out;
  std::int64_t prev = 0;
  for (std::int64_t c : cuts) {
    out.emplace_back(c - prev, denom);
    prev = c;
  }
  out.emplace_back(denom - prev, denom);
  return out;
}

std::vector<Rational> float_segments(std::size_t m, std::mt19937_64& rng) {
  std::vector<double> cuts;
  for (std::size_t i = 1; i < m; ++i) cuts.push_back(unit_double(rng));
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::int64_t> ticks;
  double prev = 0.0;
  for (double c : cuts) {
    ticks.push_back(std::llround((c - prev) * static_cast<double>(kFloatGrid)));
    prev = c;
  }
  ticks.push_back(std::llround((1.0 - prev) * static_cast<double>(kFloatGrid)));
  const std::int64_t drift = static_cast<std::int64_t>(kFloatGrid) - std::accumulate(ticks.begin(), ticks.end(), std::int64_t{0});
  *std::max_element(ticks.begin(), ticks.end()) += drift;
  std::vector<Rational> out;
  for (std::int64_t t : ticks) out.emplace_back(t, static_cast<std::int64_t>(kFloatGrid));
  return out;
}

}  // namespace

DisutilityVector gen_synthetic(std::size_t m, std::mt19937_64& rng, Arithmetic arithmetic) {
  if (m == 0) throw DomainError("need at least one object");
  return DisutilityVector(arithmetic == Arithmetic::Exact ? exact_segments(m, rng) : float_segments(m, rng), true);
}

std::vector<Rational> gen_row(std::size_t m, std::mt19937_64& rng, Distribution dist) {
  if (m == 0) throw DomainError("need at least one object");
  switch (dist) {
    case Distribution::UniformSegments: return exact_segments(m, rng);
    case Distribution::PowerLaw: {
      std::vector<Rational> row;
      for (std::size_t e = 0; e < m; ++e) {
        const double x = 1.0 + 999.0 * unit_double(rng);
        row.emplace_back(static_cast<std::int64_t>(std::ldexp(1.0, 40) / (x * x)));
      }
      return row;
    }
    case Distribution::ManyZeros: {
      std::vector<Rational> row = exact_segments(m, rng);
      for (auto& x : row) {
        if (unit_double(rng) < 0.6) x = Rational(0);
      }
      return row;
    }
  }
  return {};
}

RawMatrix gen_instance(std::size_t n, std::size_t m, std::mt19937_64& rng, Distribution dist) {
  RawMatrix raw;
  for (std::size_t i = 0; i < n; ++i) raw.push_back(gen_row(m, rng, dist));
  return raw;
}

RatioRecord instance_ratio(const DisutilityVector& v, std::int64_t n, const SolverLimits& limits) {
  if (v.total() != Rational(1)) throw ValidationError("ratio needs a normalized vector");
  RatioRecord r;
  r.n = n;
  r.m = static_cast<std::int64_t>(v.size());
  r.alpha = v.alpha();
  r.hill = hill_share(ShareQuery::with_objects(n, r.m, r.alpha));
  r.mms = exact_mms(v, static_cast<std::size_t>(n), limits);
  r.ratio = r.hill / r.mms;
  return r;
}

std::size_t ratio_bucket(const Rational& ratio) {
  const Rational offset = (ratio - Rational(1)) * Rational(10);
  if (offset.sign() < 0) return 0;
  return static_cast<std::size_t>(offset.floor_int());
}

Rational bucket_low(std::size_t bucket) { return Rational(1) + Rational(static_cast<std::int64_t>(bucket), 10); }
Rational bucket_high(std::size_t bucket) { return bucket_low(bucket + 1); }

std::size_t RatioHistogram::total() const {
  std::size_t sum = 0;
  for (const auto& [m, c] : counts) sum += std::accumulate(c.begin(), c.end(), std::size_t{0});
  return sum;
}

std::size_t RatioHistogram::count_in(std::size_t bucket) const {
  std::size_t sum = 0;
  for (const auto& [m, c] : counts) {
    if (bucket < c.size()) sum += c[bucket];
  }
  return sum;
}

RatioHistogram run_histogram(const ExperimentConfig& cfg, const SolverLimits& limits) {
  cfg.validate();
  RatioHistogram hist;
  hist.n = cfg.n;
  for (std::int64_t m : cfg.m_values) {
    auto& counts = hist.counts[m];
    counts.assign(10, 0);  // up to [1.9, 2.0)
    std::mt19937_64 rng = make_rng(cfg.seed, cfg.n, m);
    for (std::int64_t i = 0; i < cfg.instances_per_setting; ++i) {
      const DisutilityVector v = gen_synthetic(static_cast<std::size_t>(m), rng, cfg.arithmetic);
      RatioRecord rec = instance_ratio(v, cfg.n, limits);
      const std::size_t b = ratio_bucket(rec.ratio);
      if (b >= counts.size()) counts.resize(b + 1, 0);
      ++counts[b];
      hist.records.push_back(std::move(rec));
    }
  }
  return hist;
}

std::vector<CurveRow> curve_samples(std::int64_t n, const std::vector<Rational>& grid, std::optional<std::int64_t> m,
                                    std::vector<std::string>* warnings) {
  std::vector<CurveRow> rows;
  for (const Rational& alpha : grid) {
    const ShareQuery q{n, m, alpha};
    try {
      CurveRow row;
      row.alpha = alpha;
      row.upper = hill_share(q);
      row.lower = mms_lower_bound(q);
      row.guarantee = guarantee(n, alpha);
      row.ratio = row.upper / row.lower;
      rows.push_back(std::move(row));
    } catch (const DomainError& e) {
      if (warnings) warnings->push_back("skipping alpha=" + alpha.str() + ": " + e.what());
    }
  }
  return rows;
}

std::vector<DisutilityVector> ingest_csv(const std::string& path, std::vector<std::string>* warnings) {
  const RawMatrix raw = read_instance_csv_file(path);
  std::vector<DisutilityVector> out;
  if (raw.empty() && warnings) warnings->push_back(path + ": no rows");
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Rational total(0);
    for (const Rational& x : raw[i]) total += x;
    if (total.is_zero()) {
      if (warnings) warnings->push_back(path + ": row " + std::to_string(i + 1) + " is all zero, skipped");
      continue;
    }
    std::vector<Rational> row;
    for (const Rational& x : raw[i]) row.push_back(x / total);
    out.emplace_back(std::move(row), true);
  }
  return out;
}

std::vector<OpenInterval> high_ratio_ranges(std::int64_t n) {
  if (n < 2) throw DomainError("n must be at least 2");
  switch (n) {
    case 2: return {};
    case 3: return {{Rational(2, 9), Rational(1, 3)}};
    case 4: return {{Rational(1, 6), Rational(3, 11)}};
    case 5: return {{Rational(4, 45), Rational(1, 9)}, {Rational(2, 15), Rational(3, 13)}};
    default: return {{Rational(4, 9 * n), Rational(3, 2 * n + 3)}};
  }
}

void write_histogram_csv(std::ostream& out, const ExperimentConfig& cfg, const RatioHistogram& hist) {
  out << cfg.header() << "\n";
  out << "n,m,bucket_lo,bucket_hi,count\n";
  for (const auto& [m, counts] : hist.counts) {
    for (std::size_t b = 0; b < counts.size(); ++b) {
      out << hist.n << "," << m << "," << one_decimal(10 + b) << "," << one_decimal(11 + b) << ","
          << counts[b] << "\n";
    }
  }
}

void write_records_csv(std::ostream& out, const std::string& header, const std::vector<RatioRecord>& records) {
  out << header << "\n";
  out << "n,m,alpha,hill_share,mms,ratio,ratio_decimal\n";
  for (const auto& r : records) {
    out << r.n << "," << r.m << "," << r.alpha << "," << r.hill << "," << r.mms << "," << r.ratio << ","
        << r.ratio.decimal(12) << "\n";
  }
}

void write_curve_csv(std::ostream& out, const std::string& header, const std::vector<CurveRow>& rows) {
  out << header << "\n";
  out << "alpha_fraction,alpha_decimal,delta_upper,delta_lower,guarantee,ratio\n";
  for (const auto& r : rows) {
    out << r.alpha << "," << r.alpha.decimal(12) << "," << r.upper.decimal(12) << "," << r.lower.decimal(12) << ","
        << r.guarantee.decimal(12) << "," << r.ratio.decimal(12) << "\n";
  }
}

}  // namespace hillshare
