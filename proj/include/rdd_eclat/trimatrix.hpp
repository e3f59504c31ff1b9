#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "rdd_eclat/dataset.hpp"
#include "rdd_eclat/exec.hpp"

namespace rdd_eclat {

/// Upper-triangular co-occurrence counts over frequent-item ranks. Cell
/// (r1, r2) with r1 < r2 holds the number of transactions containing both
/// items. There is no diagonal.
class TriangularMatrix {
 public:
  using Count = std::uint32_t;

  TriangularMatrix() = default;
  explicit TriangularMatrix(std::size_t dim) : dim_(dim), counts_(dim < 2 ? 0 : dim * (dim - 1) / 2, 0) {}

  [[nodiscard]] std::size_t dim() const { return dim_; }
  [[nodiscard]] std::size_t cell_count() const { return counts_.size(); }

  /// Rank-pair access; order of arguments is irrelevant, r1 != r2.
  [[nodiscard]] Count get(Rank r1, Rank r2) const { return counts_[index(r1, r2)]; }
  void increment(Rank r1, Rank r2) { ++counts_[index(r1, r2)]; }

  /// Adds every pair of a rank-sorted, duplicate-free rank list.
  void add_transaction(std::span<const Rank> sorted_ranks);

  /// Element-wise addition; dimensions must agree.
  TriangularMatrix& operator+=(const TriangularMatrix& other);

  bool operator==(const TriangularMatrix&) const = default;

 private:
  [[nodiscard]] std::size_t index(Rank r1, Rank r2) const;

  std::size_t dim_ = 0;
  std::vector<Count> counts_;
};

/// Counts all frequent 2-itemsets of the partitioned transactions; each
/// partition fills its own matrix and the partials are summed.
TriangularMatrix count_pairs(const exec::Executor& ex, const exec::Partitioned<Transaction>& transactions,
                             const FrequentItemTable& freq);

/// Sequential convenience overload.
TriangularMatrix count_pairs(const TransactionDB& db, const FrequentItemTable& freq);

/// Co-occurrence count of two frequent items. Throws MiningError for an
/// unknown item or item_i == item_j.
Support pair_support(const TriangularMatrix& m, const FrequentItemTable& freq, Item item_i, Item item_j);

}  // namespace rdd_eclat
