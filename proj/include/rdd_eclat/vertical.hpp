#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "rdd_eclat/dataset.hpp"

namespace rdd_eclat {

/// Strictly ascending transaction ids of the transactions containing an
/// itemset. Its size is the itemset's support.
class Tidset {
 public:
  Tidset() = default;
  Tidset(std::initializer_list<Tid> tids) : tids_(tids) {}
  /// Takes ownership of ids that are already strictly ascending.
  static Tidset from_sorted(std::vector<Tid> tids) {
    Tidset t;
    t.tids_ = std::move(tids);
    return t;
  }

  [[nodiscard]] Support support() const { return static_cast<Support>(tids_.size()); }
  [[nodiscard]] std::size_t size() const { return tids_.size(); }
  [[nodiscard]] bool empty() const { return tids_.empty(); }
  [[nodiscard]] std::span<const Tid> tids() const { return tids_; }
  [[nodiscard]] auto begin() const { return tids_.begin(); }
  [[nodiscard]] auto end() const { return tids_.end(); }

  void push_back(Tid t) { tids_.push_back(t); }
  [[nodiscard]] std::vector<Tid>& raw() { return tids_; }

  bool operator==(const Tidset&) const = default;

 private:
  std::vector<Tid> tids_;
};

/// Sorted intersection. Falls back to galloping search when one side is much
/// shorter than the other.
Tidset intersect(const Tidset& a, const Tidset& b);

/// Merges two sorted tidsets over disjoint transactions.
Tidset merge_disjoint(const Tidset& a, const Tidset& b);

/// Vertical database: one tidset per frequent item, stored in rank order
/// (support ascending).
class VerticalDB {
 public:
  VerticalDB() = default;
  /// tidsets[r] belongs to freq.item_at(r).
  VerticalDB(FrequentItemTable freq, std::vector<Tidset> tidsets);

  [[nodiscard]] std::size_t size() const { return tidsets_.size(); }
  [[nodiscard]] bool empty() const { return tidsets_.empty(); }
  [[nodiscard]] const FrequentItemTable& items() const { return freq_; }
  [[nodiscard]] std::vector<Item> item_order() const { return freq_.item_order(); }
  [[nodiscard]] Item item_at(Rank r) const { return freq_.item_at(r); }
  [[nodiscard]] const Tidset& tidset_at(Rank r) const { return tidsets_[r]; }
  /// Throws MiningError when the item is not frequent.
  [[nodiscard]] const Tidset& tidset(Item item) const;

 private:
  FrequentItemTable freq_;
  std::vector<Tidset> tidsets_;
};

/// Tid of each transaction is its 1-based position in db.
VerticalDB build_vertical(const TransactionDB& db, const FrequentItemTable& freq);

}  // namespace rdd_eclat
