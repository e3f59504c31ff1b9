#include <doctest.h>

#include <random>

#include "rdd_eclat/errors.hpp"
#include "rdd_eclat/miner.hpp"
#include "support/properties.hpp"
#include "support/test_support.hpp"

using namespace rdd_eclat;
using rdd_eclat::testing::as_map;

namespace {

constexpr Variant kAll[] = {Variant::kApriori, Variant::kV1, Variant::kV2, Variant::kV3,
                            Variant::kV4,      Variant::kV5, Variant::kOracle};

MiningConfig config(Variant v, Support min_count, std::size_t workers = 2) {
  MiningConfig cfg;
  cfg.variant = v;
  cfg.min_support = MinSupport::absolute(min_count);
  cfg.workers = workers;
  return cfg;
}

EquivalenceClass d1_prefix1_class(Support min_count) {
  const auto db = testing::d1();
  const auto freq = count_items(db, min_count);
  auto cl = build_classes(exec::Executor(1), build_vertical(db, freq), min_count, nullptr);
  REQUIRE(!cl.classes.empty());
  REQUIRE(cl.classes[0].prefix == 1);
  return cl.classes[0];
}

std::vector<Itemset> d1_golden_3() {
  return {{{1}, 4},    {{2}, 4},    {{3}, 4},    {{4}, 4},    {{1, 2}, 3},
          {{1, 3}, 3}, {{1, 4}, 3}, {{2, 3}, 3}, {{2, 4}, 3}, {{3, 4}, 3}};
}

}  // namespace

TEST_CASE("D1 golden sets agree with the power-set oracle") {
  // Freezes the hand-derived fixture against exhaustive enumeration.
  CHECK(as_map(d1_golden_3()) == testing::power_set_frequent(testing::d1(), 3));
  const auto two = testing::power_set_frequent(testing::d1(), 2);
  CHECK(two.size() == 14);
  CHECK(two.at({1, 2, 3}) == 2);
  CHECK(two.count({1, 2, 3, 4}) == 0);
}

TEST_CASE("bottom_up on the D1 prefix-1 class") {
  CHECK(bottom_up(d1_prefix1_class(3), 3).empty());
  const auto found = bottom_up(d1_prefix1_class(2), 2);
  CHECK(found == std::vector<Itemset>{{{1, 2, 3}, 2}, {{1, 2, 4}, 2}, {{1, 3, 4}, 2}});
}

TEST_CASE("bottom_up edge cases") {
  EquivalenceClass single{5, 0, {{6, Tidset{1, 2}}}};
  CHECK(bottom_up(single, 1).empty());
  CHECK(bottom_up(EquivalenceClass{}, 1).empty());
  // {1,2,3,4} is frequent at min_count 1; a cap of 3 cannot reach it.
  CHECK_THROWS_AS(bottom_up(d1_prefix1_class(1), 1, 3), MiningError);
  CHECK(bottom_up(d1_prefix1_class(1), 1, 4).size() == 4);
}

TEST_CASE("every variant mines the D1 golden sets") {
  for (Variant v : kAll) {
    CAPTURE(to_string(v));
    CHECK(mine(testing::d1(), config(v, 3)).itemsets == d1_golden_3());
    const auto two = mine(testing::d1(), config(v, 2));
    CHECK(as_map(two.itemsets) == testing::power_set_frequent(testing::d1(), 2));
    CHECK(mine(testing::d1(), config(v, 5)).itemsets.empty());
    CHECK(mine(testing::d1(), config(v, 6)).itemsets.empty());
    CHECK(mine(TransactionDB{}, config(v, 1)).itemsets.empty());
    CHECK(mine(testing::make_db({{3, 4}, {3}}), config(v, 2)).itemsets == std::vector<Itemset>{{{3}, 2}});
  }
}

TEST_CASE("result metadata") {
  auto cfg = config(Variant::kV4, 1);
  cfg.min_support = MinSupport::relative(0.5);
  const auto r = mine(testing::d1(), cfg);
  CHECK(r.min_count == 3);
  CHECK(r.num_transactions == 5);
  CHECK(r.config.variant == Variant::kV4);
  REQUIRE(r.balance.has_value());
  CHECK(r.balance->totals.size() == 10);
  CHECK(r.total_ms >= 0);

  const auto v1 = mine(testing::d1(), config(Variant::kV1, 3));
  REQUIRE(v1.balance.has_value());
  CHECK(v1.balance->totals == std::vector<std::size_t>{3, 2, 1});
}

TEST_CASE("MinSupport") {
  CHECK(MinSupport::relative(0.01).resolve(100000) == 1000);
  CHECK(MinSupport::relative(0.05).resolve(100000) == 5000);
  CHECK(MinSupport::relative(0.5).resolve(5) == 3);
  CHECK(MinSupport::relative(1.0).resolve(5) == 5);
  CHECK(MinSupport::relative(0.001).resolve(10) == 1);
  CHECK(MinSupport::absolute(7).resolve(3) == 7);
  CHECK_THROWS_AS(MinSupport::relative(1.5), ConfigError);
  CHECK_THROWS_AS(MinSupport::relative(0.0), ConfigError);
  CHECK_THROWS_AS(MinSupport::absolute(0), ConfigError);
  CHECK(MinSupport::relative(0.05).to_string() == "0.05");
}

TEST_CASE("config validation and names") {
  auto cfg = config(Variant::kV4, 1);
  cfg.partitions = 0;
  CHECK_THROWS_AS(mine(testing::d1(), cfg), ConfigError);
  cfg = config(Variant::kV4, 1);
  cfg.workers = 0;
  CHECK_THROWS_AS(mine(testing::d1(), cfg), ConfigError);
  for (Variant v : kAll) CHECK(parse_variant(to_string(v)) == v);
  CHECK_THROWS_AS(parse_variant("v6"), ConfigError);
  CHECK(parse_tri_matrix_mode("off") == TriMatrixMode::kOff);
  CHECK_THROWS_AS(parse_tri_matrix_mode("maybe"), ConfigError);
}

TEST_CASE("oracle") {
  CHECK(oracle(testing::d1(), 3).itemsets == d1_golden_3());
  CHECK(oracle(TransactionDB{}, 1).itemsets.empty());
  const auto items_only = oracle(testing::make_db({{1, 2}, {2, 3}, {2}}), 1, 1);
  CHECK(items_only.itemsets == std::vector<Itemset>{{{1}, 1}, {{2}, 3}, {{3}, 1}});

  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    const auto db = testing::random_db(rng, {40, 12, 6});
    const Support min_count = std::uniform_int_distribution<Support>(1, 5)(rng);
    const auto exhaustive = testing::power_set_frequent(db, min_count);
    CHECK(as_map(oracle(db, min_count).itemsets) == exhaustive);
    CHECK(testing::scan_frequent(db, min_count) == exhaustive);
  }

  SUBCASE("enumeration guard") {
    Transaction wide;
    for (Item i = 0; i < 24; ++i) wide.push_back(i);
    const TransactionDB db({wide});
    CHECK_THROWS_AS(oracle(db, 1), MiningError);
    CHECK(oracle(db, 1, 2).itemsets.size() == 24 + 276);
  }
}

TEST_CASE("variants agree with the oracle on random DBs") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 40; ++round) {
    const auto db = testing::random_db(rng, {150, 25, 8});
    const Support min_count = std::uniform_int_distribution<Support>(2, 12)(rng);
    const auto expected = oracle(db, min_count).itemsets;
    for (Variant v : kAll) {
      auto cfg = config(v, min_count, 1 + round % 4);
      cfg.partitions = 1 + round % 7;
      cfg.tri_matrix = round % 2 ? TriMatrixMode::kOff : TriMatrixMode::kAuto;
      CAPTURE(to_string(v));
      CHECK(mine(db, cfg).itemsets == expected);
    }
  }
}

TEST_CASE("boustrophedon reverse hashing mines the same itemsets") {
  std::mt19937_64 rng(8);
  const auto db = testing::random_db(rng, {200, 30, 8});
  auto cfg = config(Variant::kV5, 3);
  cfg.partitions = 3;
  const auto mirror = mine(db, cfg).itemsets;
  cfg.reverse_mode = ReverseHashMode::kBoustrophedon;
  CHECK(mine(db, cfg).itemsets == mirror);
}

TEST_CASE("property: downward closure") {
  const auto r = testing::prop_downward_closure(200, 31);
  INFO(r.counterexample);
  CHECK(r.passed);
}

TEST_CASE("property: support exactness") {
  const auto r = testing::prop_support_exactness(200, 32);
  INFO(r.counterexample);
  CHECK(r.passed);
}
