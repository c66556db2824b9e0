#include <doctest.h>

#include <sstream>

#include "hillshare/core.hpp"

using namespace hillshare;

namespace {
Rational q(const char* s) { return Rational::parse(s); }
}  // namespace

TEST_SUITE("core") {

TEST_CASE("disutility vector basics") {
  DisutilityVector v({q("3/10"), q("1/4"), q("1/4"), q("1/5")}, true);
  CHECK(v.alpha() == q("3/10"));
  CHECK(v.total() == 1);
  std::vector<std::size_t> bundle{0, 3};
  CHECK(v.cost(bundle) == q("1/2"));
  CHECK_FALSE(v.all_zero());
  CHECK_THROWS_AS(DisutilityVector({q("1/2"), q("-1/2")}), ValidationError);
  CHECK_THROWS_AS(DisutilityVector({q("1/2"), q("1/3")}, true), ValidationError);
}

TEST_CASE("normalize divides by row totals and keeps zero rows") {
  Instance inst = normalize({{q("1"), q("1"), q("2")}, {q("0"), q("0"), q("0")}});
  CHECK(inst.n() == 2);
  CHECK(inst.m() == 3);
  CHECK(inst.row(0)[2] == q("1/2"));
  CHECK(inst.scale_factor(0) == 4);
  CHECK(inst.is_zero_row(1));
  CHECK_FALSE(inst.is_zero_row(0));
  CHECK(inst.row(1).all_zero());
}

TEST_CASE("normalize rejects bad matrices") {
  CHECK_THROWS_AS(normalize({}), ValidationError);
  CHECK_THROWS_AS(normalize({{q("1"), q("2")}, {q("1")}}), ValidationError);
  CHECK_THROWS_AS(normalize({{q("1"), q("-2")}}), ValidationError);
}

TEST_CASE("allocation validation") {
  validate_allocation({{{0, 2}, {1}}}, 2, 3);
  validate_allocation({{{}, {0}}}, 2, 1);
  CHECK_THROWS_AS(validate_allocation({{{0}, {1}}}, 2, 3), ValidationError);        // missing object
  CHECK_THROWS_AS(validate_allocation({{{0, 1}, {1, 2}}}, 2, 3), ValidationError);  // duplicate
  CHECK_THROWS_AS(validate_allocation({{{0, 5}, {1, 2}}}, 2, 3), ValidationError);  // out of range
  CHECK_THROWS_AS(validate_allocation({{{0, 1, 2}}}, 2, 3), ValidationError);       // bundle count
}

TEST_CASE("ordering is stable and records the permutation") {
  DisutilityVector v({q("1/10"), q("2/5"), q("1/2")});
  OrderedVector ov = order_vector(v);
  CHECK(ov.values == DisutilityVector({q("1/2"), q("2/5"), q("1/10")}));
  CHECK(ov.permutation == std::vector<std::size_t>{2, 1, 0});
  OrderedVector ties = order_vector(DisutilityVector({q("1/4"), q("1/2"), q("1/4")}));
  CHECK(ties.permutation == std::vector<std::size_t>{1, 0, 2});
}

TEST_CASE("region tiling: decreasing and increasing pieces") {
  // n=2: k=0 covers (1/3, 1]; split at 2/4 = 1/2
  CHECK(classify_share(2, q("1/2")) == RegionIndex{0, RegionTag::D});
  CHECK(classify_share(2, q("3/5")) == RegionIndex{0, RegionTag::I});
  CHECK(classify_share(2, q("1")) == RegionIndex{0, RegionTag::I});
  CHECK(classify_share(2, q("1/3")) == RegionIndex{1, RegionTag::I});
  // k=1: split (3)/(2*4+3) = 3/11
  CHECK(classify_share(2, q("3/11")) == RegionIndex{1, RegionTag::D});
  CHECK(classify_share(2, q("7/25")) == RegionIndex{1, RegionTag::I});
  CHECK(classify_share(2, q("1/5")) == RegionIndex{2, RegionTag::I});
  CHECK(classify_share(3, q("3/10")) == RegionIndex{0, RegionTag::D});
}

TEST_CASE("region tiling: guarantee pieces are open/closed the other way") {
  // n=2, k=1: NI = (1/5, 3/10), IV = [3/10, 1/3]
  CHECK(classify_guarantee(2, q("3/10")) == RegionIndex{1, RegionTag::IV});
  CHECK(classify_guarantee(2, q("7/25")) == RegionIndex{1, RegionTag::NI});
  CHECK(classify_guarantee(2, q("1/3")) == RegionIndex{1, RegionTag::IV});
  CHECK(classify_guarantee(2, q("1/5")) == RegionIndex{2, RegionTag::IV});
  // k=0: NI = (1/3, 2/3), IV = [2/3, 1]
  CHECK(classify_guarantee(2, q("1/2")) == RegionIndex{0, RegionTag::NI});
  CHECK(classify_guarantee(2, q("2/3")) == RegionIndex{0, RegionTag::IV});
  CHECK(classify_guarantee(3, q("1/2")) == RegionIndex{0, RegionTag::IV});
}

TEST_CASE("classification domain") {
  CHECK_THROWS_AS(classify_share(2, q("0")), DomainError);
  CHECK_THROWS_AS(classify_share(2, q("3/2")), DomainError);
  CHECK_THROWS_AS(classify_guarantee(0, q("1/2")), DomainError);
  CHECK(to_string(RegionIndex{1, RegionTag::NI}) == "(k=1, NI)");
}

TEST_CASE("csv: header, comments, fractions, decimals") {
  std::istringstream in("\xEF\xBB\xBFobject_1,object_2,object_3\n# note\n\n1,1,2\n1/3, 0.5 ,1/6\n");
  RawMatrix raw = read_instance_csv(in);
  REQUIRE(raw.size() == 2);
  CHECK(raw[0][2] == 2);
  CHECK(raw[1][0] == q("1/3"));
  CHECK(raw[1][1] == q("1/2"));
}

TEST_CASE("csv without header and empty input") {
  std::istringstream in("1,2\n3,4\n");
  CHECK(read_instance_csv(in).size() == 2);
  std::istringstream empty("");
  CHECK(read_instance_csv(empty).empty());
}

TEST_CASE("csv errors carry line and field") {
  std::istringstream neg("a,b\n1,-2\n");
  CHECK_THROWS_WITH_AS(read_instance_csv(neg), "line 2, field 2: negative disutility -2", ValidationError);
  std::istringstream width("1,2\n1,2,3\n");
  CHECK_THROWS_WITH_AS(read_instance_csv(width), "line 2: expected 2 fields, got 3", ValidationError);
  std::istringstream junk("1,2\n1,x\n");
  CHECK_THROWS_AS(read_instance_csv(junk), ValidationError);
  CHECK_THROWS_AS(read_instance_csv_file("/nonexistent/file.csv"), ValidationError);
}

TEST_CASE("csv round trip") {
  std::vector<DisutilityVector> rows{DisutilityVector({q("1/3"), q("2/3")}), DisutilityVector({q("1"), q("0")})};
  std::ostringstream out;
  write_instance_csv(out, rows);
  CHECK(out.str() == "object_1,object_2\n1/3,2/3\n1,0\n");
  std::istringstream in(out.str());
  RawMatrix raw = read_instance_csv(in);
  CHECK(raw[0][1] == q("2/3"));
  CHECK(raw[1][0] == 1);
}

}
