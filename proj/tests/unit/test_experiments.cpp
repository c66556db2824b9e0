#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "hillshare/experiments.hpp"
#include "hillshare/shares.hpp"

using namespace hillshare;

namespace {
Rational q(const char* s) { return Rational::parse(s); }

std::string temp_file(const std::string& name, const std::string& body) {
  const std::string path = "/tmp/hillshare_test_" + name;
  std::ofstream(path) << body;
  return path;
}
}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("synthetic vectors") {
  auto rng = make_rng(42, 2, 1);
  CHECK(gen_synthetic(1, rng) == DisutilityVector({Rational(1)}, true));
  for (Arithmetic mode : {Arithmetic::Exact, Arithmetic::Float}) {
    auto r = make_rng(9, 3, 10);
    const DisutilityVector v = gen_synthetic(10, r, mode);
    CHECK(v.size() == 10);
    CHECK(v.total() == 1);
  }
  CHECK_THROWS_AS(gen_synthetic(0, rng), DomainError);
}

TEST_CASE("float mode lives on the 1e-9 grid") {
  auto rng = make_rng(1, 2, 6);
  const DisutilityVector v = gen_synthetic(6, rng, Arithmetic::Float);
  for (const Rational& x : v.values()) CHECK(mpz_class(1000000000) % x.denominator() == 0);
}

TEST_CASE("seeded generation repeats") {
  auto a = make_rng(42, 6, 9);
  auto b = make_rng(42, 6, 9);
  auto c = make_rng(43, 6, 9);
  const DisutilityVector va = gen_synthetic(9, a);
  CHECK(va == gen_synthetic(9, b));
  CHECK_FALSE(va == gen_synthetic(9, c));
}

TEST_CASE("row distributions") {
  auto rng = make_rng(5, 0, 0);
  const auto power = gen_row(30, rng, Distribution::PowerLaw);
  for (const auto& x : power) CHECK(x.sign() > 0);
  std::size_t zeros = 0;
  for (int i = 0; i < 20; ++i) {
    for (const auto& x : gen_row(10, rng, Distribution::ManyZeros)) zeros += x.is_zero();
  }
  CHECK(zeros > 80);
  CHECK(zeros < 160);
  CHECK(gen_instance(3, 4, rng, Distribution::UniformSegments).size() == 3);
  CHECK(to_string(Distribution::ManyZeros) == "many-zeros");
}

TEST_CASE("instance ratio") {
  const RatioRecord r = instance_ratio(DisutilityVector({q("3/10"), q("1/4"), q("1/4"), q("1/5")}, true), 2);
  CHECK(r.alpha == q("3/10"));
  CHECK(r.hill == q("3/5"));
  CHECK(r.mms == q("1/2"));
  CHECK(r.ratio == q("6/5"));
  const WitnessInstance w = witness_upper(ShareQuery::with_objects(3, 7, q("3/10")));
  CHECK(instance_ratio(w.vector(), 3).ratio == 1);
  CHECK_THROWS_AS(instance_ratio(DisutilityVector({q("1/2")}), 2), ValidationError);
}

TEST_CASE("buckets are half-open tenths") {
  CHECK(ratio_bucket(Rational(1)) == 0);
  CHECK(ratio_bucket(q("109/100")) == 0);
  CHECK(ratio_bucket(q("11/10")) == 1);
  CHECK(ratio_bucket(q("4/3")) == 3);
  CHECK(bucket_low(3) == q("13/10"));
  CHECK(bucket_high(3) == q("7/5"));
}

TEST_CASE("histogram") {
  ExperimentConfig cfg;
  cfg.n = 3;
  cfg.m_values = {5, 6};
  cfg.instances_per_setting = 20;
  cfg.seed = 8;
  const RatioHistogram h = run_histogram(cfg);
  CHECK(h.total() == 40);
  CHECK(h.records.size() == 40);
  for (const auto& r : h.records) {
    CHECK(r.ratio >= 1);
    CHECK(r.ratio <= q("3/2"));
  }
  const RatioHistogram again = run_histogram(cfg);
  CHECK(again.counts == h.counts);

  cfg.instances_per_setting = 0;
  CHECK(run_histogram(cfg).total() == 0);
  cfg.n = 1;
  CHECK_THROWS_AS(run_histogram(cfg), DomainError);
}

TEST_CASE("histogram csv carries the seed") {
  ExperimentConfig cfg;
  cfg.n = 2;
  cfg.m_values = {4};
  cfg.instances_per_setting = 3;
  cfg.seed = 1234;
  std::ostringstream out;
  write_histogram_csv(out, cfg, run_histogram(cfg));
  const std::string text = out.str();
  CHECK(text.rfind("# n=2 m=4 instances=3 seed=1234", 0) == 0);
  CHECK(text.find("n,m,bucket_lo,bucket_hi,count\n2,4,1.0,1.1,") != std::string::npos);
}

TEST_CASE("curve samples") {
  std::vector<std::string> warnings;
  const auto rows = curve_samples(2, {q("1/3"), q("3/5"), q("0"), q("3/2")}, std::nullopt, &warnings);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].upper == q("2/3"));
  CHECK(rows[0].lower == q("1/2"));
  CHECK(rows[0].guarantee == q("2/3"));
  CHECK(rows[0].ratio == q("4/3"));
  CHECK(rows[1].upper == q("3/5"));
  CHECK(rows[1].lower == q("3/5"));
  CHECK(rows[1].ratio == 1);
  CHECK(warnings.size() == 2);
  // restricted m skips alphas that need more objects
  CHECK(curve_samples(2, {q("1/5")}, 3).empty());

  std::ostringstream out;
  write_curve_csv(out, "# test", rows);
  CHECK(out.str().find("1/3,0.333333333333,0.666666666667,0.5,0.666666666667,1.333333333333") !=
        std::string::npos);
}

TEST_CASE("csv ingestion") {
  std::vector<std::string> warnings;
  auto rows = ingest_csv(temp_file("ints.csv", "1,1,2\n"), &warnings);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0] == DisutilityVector({q("1/4"), q("1/4"), q("1/2")}, true));
  rows = ingest_csv(temp_file("thirds.csv", "1/3,1/3,1/3\n0,0,0\n"), &warnings);
  CHECK(rows.size() == 1);
  CHECK(rows[0][0] == q("1/3"));
  CHECK(warnings.size() == 1);
  warnings.clear();
  CHECK(ingest_csv(temp_file("empty.csv", ""), &warnings).empty());
  CHECK(warnings.size() == 1);
  CHECK_THROWS_AS(ingest_csv(temp_file("neg.csv", "1,-1\n")), ValidationError);
}

TEST_CASE("high ratio ranges") {
  CHECK(high_ratio_ranges(2).empty());
  CHECK(high_ratio_ranges(3).front().lo == q("2/9"));
  CHECK(high_ratio_ranges(5).size() == 2);
  CHECK(high_ratio_ranges(10).front().hi == q("3/23"));
  CHECK(high_ratio_ranges(10).front().contains(q("1/10")));
  CHECK_FALSE(high_ratio_ranges(10).front().contains(q("3/23")));
}

}
