#include "rdd_eclat/trimatrix.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <string>

#include "rdd_eclat/errors.hpp"

namespace rdd_eclat {

std::size_t TriangularMatrix::index(Rank r1, Rank r2) const {
  if (r1 > r2) std::swap(r1, r2);
  assert(r1 != r2 && r2 < dim_);
  // Row r1 starts after rows 0..r1-1, which hold (dim-1) + ... + (dim-r1) cells.
  const std::size_t row = r1;
  return row * (2 * dim_ - row - 1) / 2 + (r2 - r1 - 1);
}

void TriangularMatrix::add_transaction(std::span<const Rank> ranks) {
  for (std::size_t a = 0; a + 1 < ranks.size(); ++a) {
    const std::size_t row = ranks[a];
    const std::size_t base = row * (2 * dim_ - row - 1) / 2 - row - 1;
    for (std::size_t b = a + 1; b < ranks.size(); ++b) {
      assert(counts_[base + ranks[b]] < std::numeric_limits<Count>::max());
      ++counts_[base + ranks[b]];
    }
  }
}

TriangularMatrix& TriangularMatrix::operator+=(const TriangularMatrix& other) {
  if (other.dim_ != dim_) throw MiningError("triangular matrix dimension mismatch");
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    assert(counts_[i] <= std::numeric_limits<Count>::max() - other.counts_[i]);
    counts_[i] += other.counts_[i];
  }
  return *this;
}

namespace {

void count_into(TriangularMatrix& m, std::span<const Transaction> transactions, const FrequentItemTable& freq) {
  std::vector<Rank> ranks;
  for (const auto& t : transactions) {
    ranks.clear();
    for (Item i : t)
      if (auto r = freq.rank_of(i)) ranks.push_back(*r);
    if (ranks.size() < 2) continue;
    std::sort(ranks.begin(), ranks.end());
    m.add_transaction(ranks);
  }
}

}  // namespace

TriangularMatrix count_pairs(const exec::Executor& ex, const exec::Partitioned<Transaction>& transactions,
                             const FrequentItemTable& freq) {
  exec::Accumulator<TriangularMatrix> acc(
      TriangularMatrix(freq.size()), [](TriangularMatrix& into, TriangularMatrix&& from) { into += from; },
      transactions.partition_count());
  ex.run(transactions.partition_count(),
         [&](std::size_t p) { count_into(acc.local(p), transactions.partition(p), freq); });
  return acc.take();
}

TriangularMatrix count_pairs(const TransactionDB& db, const FrequentItemTable& freq) {
  TriangularMatrix m(freq.size());
  count_into(m, db.transactions(), freq);
  return m;
}

Support pair_support(const TriangularMatrix& m, const FrequentItemTable& freq, Item item_i, Item item_j) {
  auto ri = freq.rank_of(item_i);
  auto rj = freq.rank_of(item_j);
  if (!ri || !rj) {
    throw MiningError("pair_support: item " + std::to_string(ri ? item_j : item_i) + " has no rank");
  }
  if (*ri == *rj) throw MiningError("pair_support: diagonal cell (" + std::to_string(item_i) + ") is undefined");
  return m.get(*ri, *rj);
}

}  // namespace rdd_eclat
