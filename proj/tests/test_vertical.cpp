#include <doctest.h>

#include <random>

#include "rdd_eclat/errors.hpp"
#include "rdd_eclat/vertical.hpp"
#include "support/properties.hpp"
#include "support/test_support.hpp"

using namespace rdd_eclat;

TEST_CASE("build_vertical on D1") {
  const auto db = testing::d1();
  const auto v = build_vertical(db, count_items(db, 3));
  REQUIRE(v.size() == 4);
  CHECK(v.tidset(1) == Tidset{1, 2, 3, 5});
  CHECK(v.tidset(2) == Tidset{1, 2, 4, 5});
  CHECK(v.tidset(3) == Tidset{1, 3, 4, 5});
  CHECK(v.tidset(4) == Tidset{2, 3, 4, 5});
  CHECK(v.item_order() == std::vector<Item>{1, 2, 3, 4});
  CHECK_THROWS_AS((void)v.tidset(9), MiningError);
}

TEST_CASE("build_vertical edge cases") {
  CHECK(build_vertical(TransactionDB{}, FrequentItemTable{}).empty());
  const auto one = testing::make_db({{7}});
  const auto v = build_vertical(one, count_items(one, 1));
  CHECK(v.tidset(7) == Tidset{1});
}

TEST_CASE("vertical tidsets match a direct scan") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 100; ++round) {
    const auto db = testing::random_db(rng, {120, 20, 9});
    const auto v = build_vertical(db, count_items(db, 2));
    for (Rank r = 0; r < v.size(); ++r) {
      std::vector<Tid> expected;
      for (std::size_t t = 0; t < db.num_transactions(); ++t) {
        const auto& tx = db[t];
        if (std::find(tx.begin(), tx.end(), v.item_at(r)) != tx.end()) expected.push_back(static_cast<Tid>(t + 1));
      }
      CHECK(v.tidset_at(r) == Tidset::from_sorted(expected));
      if (r > 0) CHECK(v.tidset_at(r - 1).size() <= v.tidset_at(r).size());
    }
  }
}

TEST_CASE("intersect") {
  CHECK(intersect(Tidset{1, 2, 3, 5}, Tidset{1, 2, 4, 5}) == Tidset{1, 2, 5});
  CHECK(intersect(Tidset{1, 2, 3}, Tidset{}).empty());
  CHECK(intersect(Tidset{}, Tidset{4}).empty());
  const Tidset x{2, 4, 8, 16};
  CHECK(intersect(x, x) == x);

  SUBCASE("galloping path") {
    std::vector<Tid> big;
    for (Tid t = 1; t <= 5000; ++t) big.push_back(t * 3);
    const auto large = Tidset::from_sorted(big);
    CHECK(intersect(Tidset{3, 4, 300, 14999, 15000}, large) == Tidset{3, 300, 15000});
    CHECK(intersect(large, Tidset{1, 2, 15001}).empty());
  }
}

TEST_CASE("merge_disjoint") {
  CHECK(merge_disjoint(Tidset{1, 4, 9}, Tidset{2, 3, 10}) == Tidset{1, 2, 3, 4, 9, 10});
  CHECK(merge_disjoint(Tidset{}, Tidset{5}) == Tidset{5});
}

TEST_CASE("property: anti-monotonicity") {
  const auto r = testing::prop_anti_monotonicity(500, 21);
  INFO(r.counterexample);
  CHECK(r.passed);
}
