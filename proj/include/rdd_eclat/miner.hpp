#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdd_eclat/dataset.hpp"
#include "rdd_eclat/equivclass.hpp"
#include "rdd_eclat/exec.hpp"

namespace rdd_eclat {

struct Itemset {
  std::vector<Item> items;  // strictly ascending
  Support support = 0;

  bool operator==(const Itemset&) const = default;
};

/// Canonical order: by length, then lexicographically by items.
bool canonical_less(const Itemset& a, const Itemset& b);
void sort_canonical(std::vector<Itemset>& itemsets);

enum class Variant { kApriori, kV1, kV2, kV3, kV4, kV5, kOracle };

std::string_view to_string(Variant v);
/// Throws ConfigError for an unknown name.
Variant parse_variant(std::string_view name);

enum class TriMatrixMode { kAuto, kOn, kOff };

std::string_view to_string(TriMatrixMode m);
TriMatrixMode parse_tri_matrix_mode(std::string_view name);

/// Minimum support, either a fraction of the transaction count or an
/// absolute transaction count.
class MinSupport {
 public:
  static MinSupport relative(double fraction);
  static MinSupport absolute(Support count);

  [[nodiscard]] bool is_relative() const { return relative_; }
  [[nodiscard]] double fraction() const { return fraction_; }
  [[nodiscard]] Support count() const { return count_; }

  /// ceil(fraction * n) for relative thresholds (at least 1); the count
  /// otherwise.
  [[nodiscard]] Support resolve(std::size_t num_transactions) const;

  /// "0.05" or "3".
  [[nodiscard]] std::string to_string() const;

 private:
  bool relative_ = false;
  double fraction_ = 0;
  Support count_ = 1;
};

struct MiningConfig {
  Variant variant = Variant::kV4;
  MinSupport min_support = MinSupport::absolute(1);
  std::size_t partitions = 10;  // p for v4 and v5
  TriMatrixMode tri_matrix = TriMatrixMode::kAuto;
  std::size_t workers = exec::default_parallelism();
  std::size_t max_oracle_len = 0;  // 0: uncapped
  ReverseHashMode reverse_mode = ReverseHashMode::kMirror;
  std::size_t max_depth = 64;  // bottom_up recursion cap

  /// Throws ConfigError on out-of-range fields.
  void validate() const;
};

struct MiningResult {
  std::vector<Itemset> itemsets;  // canonical order, no duplicates
  std::array<double, 4> phase_ms{};
  double total_ms = 0;
  std::optional<BalanceMetric> balance;
  MiningConfig config;
  Support min_count = 1;
  std::size_t num_transactions = 0;
};

/// Frequent itemsets of length >= 3 whose prefix (two smallest items in
/// item order) lies in `ec`. Depth-first, i outer and j inner; each new
/// itemset's tidset is the intersection of its two generating atoms.
/// Throws MiningError if recursion exceeds max_depth.
std::vector<Itemset> bottom_up(const EquivalenceClass& ec, Support min_count, std::size_t max_depth = 64);

/// Runs the configured variant. Every variant returns the same itemsets.
MiningResult mine(const TransactionDB& db, const MiningConfig& cfg);
MiningResult mine(const std::filesystem::path& db_path, const MiningConfig& cfg);

/// Level-wise Apriori: self-join of L_k, subset pruning, partition-parallel
/// counting.
MiningResult apriori_baseline(const exec::Executor& ex, const TransactionDB& db, Support min_count);

/// Largest number of candidates the oracle examines before giving up.
inline constexpr std::size_t kOracleCandidateLimit = std::size_t{1} << 20;

/// Brute-force ground truth: depth-first extension over the items present,
/// supports counted by scanning every transaction. max_len == 0 means no cap.
/// Throws MiningError once more than kOracleCandidateLimit candidates have
/// been examined.
MiningResult oracle(const TransactionDB& db, Support min_count, std::size_t max_len = 0);

/// Support of one itemset by direct scan.
Support scan_support(const TransactionDB& db, std::span<const Item> items);

}  // namespace rdd_eclat
