#include <doctest.h>

#include "rdd_eclat/equivclass.hpp"
#include "rdd_eclat/errors.hpp"
#include "support/test_support.hpp"

using namespace rdd_eclat;

namespace {

std::vector<Item> atom_items(const EquivalenceClass& ec) {
  std::vector<Item> v;
  for (const auto& a : ec.atoms) v.push_back(a.item);
  return v;
}

// Classes with the given prefix ranks and atom counts.
std::vector<EquivalenceClass> fake_classes(const std::vector<std::size_t>& atoms_per_rank) {
  std::vector<EquivalenceClass> out;
  for (std::size_t r = 0; r < atoms_per_rank.size(); ++r) {
    EquivalenceClass ec;
    ec.prefix = static_cast<Item>(100 + r);
    ec.prefix_rank = static_cast<Rank>(r);
    ec.atoms.resize(atoms_per_rank[r]);
    out.push_back(std::move(ec));
  }
  return out;
}

std::vector<std::size_t> ids(const PartitionAssignment& a) {
  std::vector<std::size_t> v;
  for (const auto& [rank, pid] : a.mapping) v.push_back(pid);
  return v;
}

ClassList d1_classes(Support min_count, bool with_matrix) {
  const auto db = testing::d1();
  const auto freq = count_items(db, min_count);
  const auto v = build_vertical(db, freq);
  const auto m = count_pairs(db, freq);
  return build_classes(exec::Executor(2), v, min_count, with_matrix ? &m : nullptr);
}

}  // namespace

TEST_CASE("build_classes on D1, min_count 3") {
  for (bool with_matrix : {true, false}) {
    const auto cl = d1_classes(3, with_matrix);
    REQUIRE(cl.classes.size() == 3);
    CHECK(cl.classes[0].prefix == 1);
    CHECK(atom_items(cl.classes[0]) == std::vector<Item>{2, 3, 4});
    CHECK(atom_items(cl.classes[1]) == std::vector<Item>{3, 4});
    CHECK(atom_items(cl.classes[2]) == std::vector<Item>{4});
    CHECK(cl.total_atoms() == 6);
    CHECK(cl.classes[0].atoms[0].tids == Tidset{1, 2, 5});
    for (const auto& ec : cl.classes)
      for (const auto& a : ec.atoms) CHECK(a.tids.support() == 3);
    CHECK(cl.empty_prefix_ranks.empty());
  }
}

TEST_CASE("build_classes drops infrequent atoms") {
  for (bool with_matrix : {true, false}) {
    const auto cl = d1_classes(4, with_matrix);
    CHECK(cl.classes.empty());
    CHECK(cl.empty_prefix_ranks == std::vector<Rank>{0, 1, 2});
    CHECK(cl.num_items == 4);
  }
}

TEST_CASE("build_classes with one frequent item") {
  const auto db = testing::make_db({{1, 2}, {1}});
  const auto freq = count_items(db, 2);
  const auto cl = build_classes(exec::Executor(1), build_vertical(db, freq), 2, nullptr);
  CHECK(cl.classes.empty());
  CHECK(cl.empty_prefix_ranks.empty());
}

TEST_CASE("default_partitioner") {
  const auto cl = d1_classes(3, true);
  const auto a = default_partitioner(cl.classes, 4);
  CHECK(a.num_partitions == 3);
  CHECK(a.mapping == std::map<Rank, std::size_t>{{0, 0}, {1, 1}, {2, 2}});
  CHECK(a.balance == std::vector<std::size_t>{3, 2, 1});
  CHECK(default_partitioner(fake_classes({1}), 2).num_partitions == 1);
  CHECK_THROWS_AS(default_partitioner(cl.classes, 1), ConfigError);
}

TEST_CASE("hash_partitioner") {
  const auto three = fake_classes({1, 1, 1});
  CHECK(ids(hash_partitioner(three, 2)) == std::vector<std::size_t>{0, 1, 0});
  CHECK(ids(hash_partitioner(three, 5)) == std::vector<std::size_t>{0, 1, 2});
  CHECK(ids(hash_partitioner(three, 1)) == std::vector<std::size_t>{0, 0, 0});
  CHECK_THROWS_AS(hash_partitioner(three, 0), ConfigError);
}

TEST_CASE("reverse_hash_partitioner") {
  CHECK(ids(reverse_hash_partitioner(fake_classes({1, 1, 1}), 2)) == std::vector<std::size_t>{0, 1, 1});
  CHECK(ids(reverse_hash_partitioner(fake_classes({1, 1, 1, 1, 1, 1}), 3)) ==
        std::vector<std::size_t>{0, 1, 2, 2, 1, 0});
  CHECK(ids(reverse_hash_partitioner(fake_classes({1, 1, 1}), 1)) == std::vector<std::size_t>{0, 0, 0});
  CHECK_THROWS_AS(reverse_hash_partitioner(fake_classes({1}), 0), ConfigError);

  SUBCASE("mirror vs boustrophedon beyond 2p") {
    const auto nine = fake_classes(std::vector<std::size_t>(9, 1));
    CHECK(ids(reverse_hash_partitioner(nine, 3)) == std::vector<std::size_t>{0, 1, 2, 2, 1, 0, 2, 1, 0});
    CHECK(ids(reverse_hash_partitioner(nine, 3, ReverseHashMode::kBoustrophedon)) ==
          std::vector<std::size_t>{0, 1, 2, 2, 1, 0, 0, 1, 2});
  }
}

TEST_CASE("partitioners with n = 11 classes and p = 10") {
  const auto classes = fake_classes(std::vector<std::size_t>(11, 1));
  const auto hash = ids(hash_partitioner(classes, 10));
  const auto rev = ids(reverse_hash_partitioner(classes, 10));
  CHECK(hash == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 0});
  CHECK(rev == std::vector<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 9});
}

TEST_CASE("balance_metric") {
  const auto cl = d1_classes(3, true);
  const auto m = balance_metric(default_partitioner(cl.classes, 4));
  CHECK(m.totals == std::vector<std::size_t>{3, 2, 1});
  // sqrt(2/3) / 2
  CHECK(m.cv == doctest::Approx(0.4082482905).epsilon(1e-9));
  CHECK(balance_metric(hash_partitioner(cl.classes, 1)).cv == 0.0);
  CHECK(balance_metric(hash_partitioner(fake_classes({2, 2, 2, 2}), 4)).cv == 0.0);
  CHECK(balance_metric(hash_partitioner(fake_classes({0, 0}), 2)).cv == 0.0);
}

TEST_CASE("balance sums to the total atom count") {
  const auto classes = fake_classes({9, 8, 7, 6, 5, 4, 3, 2, 1, 1, 0, 3});
  std::size_t total = 0;
  for (const auto& c : classes) total += c.atoms.size();
  for (std::size_t p : {1u, 3u, 10u, 20u}) {
    for (const auto& a : {hash_partitioner(classes, p), reverse_hash_partitioner(classes, p)}) {
      std::size_t sum = 0;
      for (auto b : a.balance) sum += b;
      CHECK(sum == total);
      for (const auto& [rank, pid] : a.mapping) CHECK(pid < p);
    }
  }
}

TEST_CASE("place_classes follows the assignment") {
  auto classes = fake_classes({3, 2, 1, 1, 1});
  const auto a = reverse_hash_partitioner(classes, 2);
  const auto placed = place_classes(classes, a);
  REQUIRE(placed.partition_count() == 2);
  for (std::size_t p = 0; p < 2; ++p)
    for (const auto& ec : placed.partition(p)) CHECK(a.partition_of(ec.prefix_rank) == p);
  CHECK(placed.size() == 5);
}
