#include "doctest.h"

#include "carent/error.hpp"
#include "carent/region.hpp"

using carent::Region;

TEST_CASE("region set operations") {
  const Region a{1, 2}, b{2, 3};
  CHECK(a.unite(b) == Region{1, 2, 3});
  CHECK(a.intersect(b) == Region{2});
  CHECK(a.minus(b) == Region{1});
  CHECK_FALSE(a.disjoint(b));
  CHECK(Region{1}.disjoint(Region{3}));
  CHECK(Region{1, 2, 3}.contains(Region{1, 3}));
  CHECK_FALSE(Region{1, 3}.contains(Region{2}));
  CHECK(Region{}.empty());
  CHECK(Region{2, 4, 5}.positions_of(Region{4, 5}) == std::vector<int>{2, 3});
}

TEST_CASE("region constructor sorts and rejects duplicates") {
  CHECK(Region{3, 1}.sites() == std::vector<int>{1, 3});
  CHECK_THROWS_AS(Region({1, 1}), carent::ArgumentError);
  CHECK_THROWS_AS(Region({0, 1}), carent::ArgumentError);
}

TEST_CASE("region parsing") {
  CHECK(Region::parse("1,3") == Region{1, 3});
  CHECK(Region::parse(" 2 , 4 ") == Region{2, 4});
  CHECK(Region::parse("") == Region{});
  CHECK_THROWS_AS(Region::parse("1,,2"), carent::ArgumentError);
  CHECK_THROWS_AS(Region::parse("x"), carent::ArgumentError);
  CHECK_THROWS_AS(Region::parse("2,2"), carent::ArgumentError);
  CHECK(Region{1, 3}.to_string() == "{1,3}");
}
