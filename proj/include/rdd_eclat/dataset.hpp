#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rdd_eclat {

using Item = std::uint32_t;
using Tid = std::uint32_t;
using Support = std::uint32_t;
using Rank = std::uint32_t;

/// Items of one transaction, strictly ascending. The transaction id is
/// positional (1-based) and never stored.
using Transaction = std::vector<Item>;

/// Sorts and deduplicates in place.
void canonicalize(Transaction& t);

/// Horizontal database: transactions in file order.
class TransactionDB {
 public:
  TransactionDB() = default;
  /// Takes transactions as-is; each must already be canonical.
  explicit TransactionDB(std::vector<Transaction> transactions);

  [[nodiscard]] std::size_t num_transactions() const { return transactions_.size(); }
  [[nodiscard]] bool empty() const { return transactions_.empty(); }
  /// Largest item id seen, or nullopt for a DB without items.
  [[nodiscard]] std::optional<Item> item_universe_max() const { return max_item_; }
  [[nodiscard]] std::span<const Transaction> transactions() const { return transactions_; }
  [[nodiscard]] const Transaction& operator[](std::size_t i) const { return transactions_[i]; }

  /// Sum of transaction widths.
  [[nodiscard]] std::size_t total_items() const;

  bool operator==(const TransactionDB&) const = default;

 private:
  std::vector<Transaction> transactions_;
  std::optional<Item> max_item_;
};

struct ItemCount {
  Item item = 0;
  Support support = 0;
  bool operator==(const ItemCount&) const = default;
};

/// Frequent items in support-ascending order (ties by item id), with an
/// inverse item -> rank lookup.
class FrequentItemTable {
 public:
  FrequentItemTable() = default;

  /// Keeps the counts with support >= min_count and sorts them.
  static FrequentItemTable from_counts(std::vector<ItemCount> counts, Support min_count);

  [[nodiscard]] std::span<const ItemCount> entries() const { return entries_; }
  [[nodiscard]] std::size_t size() const { return entries_.size(); }
  [[nodiscard]] bool empty() const { return entries_.empty(); }
  [[nodiscard]] Support min_count() const { return min_count_; }
  [[nodiscard]] Item item_at(Rank r) const { return entries_[r].item; }
  [[nodiscard]] Support support_at(Rank r) const { return entries_[r].support; }

  [[nodiscard]] std::optional<Rank> rank_of(Item item) const {
    if (!dense_rank_.empty()) {
      if (item >= dense_rank_.size() || dense_rank_[item] == kNoRank) return std::nullopt;
      return dense_rank_[item];
    }
    return sparse_rank_of(item);
  }
  [[nodiscard]] bool contains(Item item) const { return rank_of(item).has_value(); }

  /// Items in rank order.
  [[nodiscard]] std::vector<Item> item_order() const;

 private:
  [[nodiscard]] std::optional<Rank> sparse_rank_of(Item item) const;

  static constexpr Item kDenseLimit = Item{1} << 24;
  static constexpr Rank kNoRank = ~Rank{0};

  std::vector<ItemCount> entries_;
  Support min_count_ = 1;
  // Dense item -> rank table when the largest frequent id is small, otherwise
  // binary search over (item, rank) pairs sorted by item.
  std::vector<Rank> dense_rank_;
  std::vector<std::pair<Item, Rank>> sparse_rank_;
};

// ---- FIMI I/O --------------------------------------------------------------

/// Parses FIMI text: one transaction per line, whitespace-separated
/// non-negative integers. Blank lines are skipped.
TransactionDB parse_fimi(std::istream& in);
TransactionDB load_fimi(const std::filesystem::path& path);

void write_fimi(std::ostream& out, const TransactionDB& db);
void save_fimi(const std::filesystem::path& path, const TransactionDB& db);

// ---- Counting and filtering ------------------------------------------------

/// Exact per-item transaction counts for items occurring >= min_count times.
FrequentItemTable count_items(const TransactionDB& db, Support min_count);

/// Projects one transaction onto the frequent items (order preserved).
Transaction filter_transaction(const Transaction& t, const FrequentItemTable& freq);

/// Projects every transaction onto the frequent items and drops the ones that
/// become empty.
TransactionDB filter_transactions(const TransactionDB& db, const FrequentItemTable& freq);

/// Concatenates `factor` copies of the database.
TransactionDB replicate(const TransactionDB& db, std::size_t factor);

// ---- Synthetic data --------------------------------------------------------

struct SyntheticParams {
  std::size_t num_transactions = 1000;
  std::size_t num_items = 100;
  double avg_width = 10;
  double pattern_len = 4;
  std::uint64_t seed = 0;
};

/// IBM-Quest-style generator: transactions are assembled from a weighted pool
/// of Poisson-length patterns, so correlated itemsets exist. Deterministic for
/// a fixed seed.
TransactionDB generate_synthetic(const SyntheticParams& params);

}  // namespace rdd_eclat
