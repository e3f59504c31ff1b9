#include "rdd_eclat/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <string>
#include <unordered_map>

#include "rdd_eclat/errors.hpp"

namespace rdd_eclat {

void canonicalize(Transaction& t) {
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
}

TransactionDB::TransactionDB(std::vector<Transaction> transactions)
    : transactions_(std::move(transactions)) {
  for (const auto& t : transactions_) {
    if (!t.empty() && (!max_item_ || t.back() > *max_item_)) max_item_ = t.back();
  }
}

std::size_t TransactionDB::total_items() const {
  std::size_t n = 0;
  for (const auto& t : transactions_) n += t.size();
  return n;
}

// ---- FrequentItemTable -----------------------------------------------------

FrequentItemTable FrequentItemTable::from_counts(std::vector<ItemCount> counts, Support min_count) {
  FrequentItemTable table;
  table.min_count_ = min_count;
  std::erase_if(counts, [&](const ItemCount& c) { return c.support < min_count; });
  std::sort(counts.begin(), counts.end(), [](const ItemCount& a, const ItemCount& b) {
    return a.support != b.support ? a.support < b.support : a.item < b.item;
  });
  table.entries_ = std::move(counts);

  Item max_item = 0;
  for (const auto& e : table.entries_) max_item = std::max(max_item, e.item);
  if (!table.entries_.empty() && max_item < kDenseLimit) {
    table.dense_rank_.assign(std::size_t{max_item} + 1, kNoRank);
    for (Rank r = 0; r < table.entries_.size(); ++r) table.dense_rank_[table.entries_[r].item] = r;
  } else {
    table.sparse_rank_.reserve(table.entries_.size());
    for (Rank r = 0; r < table.entries_.size(); ++r) table.sparse_rank_.emplace_back(table.entries_[r].item, r);
    std::sort(table.sparse_rank_.begin(), table.sparse_rank_.end());
  }
  return table;
}

std::optional<Rank> FrequentItemTable::sparse_rank_of(Item item) const {
  auto it = std::lower_bound(sparse_rank_.begin(), sparse_rank_.end(), std::pair<Item, Rank>{item, 0});
  if (it == sparse_rank_.end() || it->first != item) return std::nullopt;
  return it->second;
}

std::vector<Item> FrequentItemTable::item_order() const {
  std::vector<Item> order;
  order.reserve(entries_.size());
  for (const auto& e : entries_) order.push_back(e.item);
  return order;
}

// ---- FIMI I/O --------------------------------------------------------------

namespace {

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

}  // namespace

TransactionDB parse_fimi(std::istream& in) {
  std::vector<Transaction> transactions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    Transaction t;
    const char* p = line.data();
    const char* end = p + line.size();
    while (p != end) {
      while (p != end && is_blank(*p)) ++p;
      if (p == end) break;
      const char* tok = p;
      while (p != end && !is_blank(*p)) ++p;
      if (*tok == '-') {
        throw DatasetError("line " + std::to_string(line_no) + ": negative item id '" + std::string(tok, p) + "'");
      }
      Item value = 0;
      auto [ptr, ec] = std::from_chars(tok, p, value);
      if (ec != std::errc{} || ptr != p) {
        throw DatasetError("line " + std::to_string(line_no) + ": invalid item token '" + std::string(tok, p) + "'");
      }
      t.push_back(value);
    }
    if (t.empty()) continue;
    canonicalize(t);
    transactions.push_back(std::move(t));
  }
  if (in.bad()) throw DatasetError("read failure after line " + std::to_string(line_no));
  return TransactionDB(std::move(transactions));
}

TransactionDB load_fimi(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset '" + path.string() + "'");
  return parse_fimi(in);
}

void write_fimi(std::ostream& out, const TransactionDB& db) {
  std::string line;
  for (const auto& t : db.transactions()) {
    line.clear();
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (i) line += ' ';
      line += std::to_string(t[i]);
    }
    line += '\n';
    out << line;
  }
}

void save_fimi(const std::filesystem::path& path, const TransactionDB& db) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DatasetError("cannot write dataset '" + path.string() + "'");
  write_fimi(out, db);
  if (!out) throw DatasetError("write failure on '" + path.string() + "'");
}

// ---- Counting and filtering ------------------------------------------------

FrequentItemTable count_items(const TransactionDB& db, Support min_count) {
  if (min_count < 1) throw ConfigError("min_count must be >= 1");
  std::vector<ItemCount> counts;
  if (auto max_item = db.item_universe_max(); max_item && *max_item < (Item{1} << 24)) {
    std::vector<Support> dense(std::size_t{*max_item} + 1, 0);
    for (const auto& t : db.transactions())
      for (Item i : t) ++dense[i];
    for (Item i = 0; i < dense.size(); ++i)
      if (dense[i] > 0) counts.push_back({i, dense[i]});
  } else {
    std::unordered_map<Item, Support> sparse;
    for (const auto& t : db.transactions())
      for (Item i : t) ++sparse[i];
    for (auto [item, n] : sparse) counts.push_back({item, n});
  }
  return FrequentItemTable::from_counts(std::move(counts), min_count);
}

Transaction filter_transaction(const Transaction& t, const FrequentItemTable& freq) {
  Transaction out;
  for (Item i : t)
    if (freq.contains(i)) out.push_back(i);
  return out;
}

TransactionDB filter_transactions(const TransactionDB& db, const FrequentItemTable& freq) {
  std::vector<Transaction> kept;
  kept.reserve(db.num_transactions());
  for (const auto& t : db.transactions()) {
    auto f = filter_transaction(t, freq);
    if (!f.empty()) kept.push_back(std::move(f));
  }
  return TransactionDB(std::move(kept));
}

TransactionDB replicate(const TransactionDB& db, std::size_t factor) {
  if (factor < 1) throw ConfigError("replication factor must be >= 1");
  std::vector<Transaction> out;
  out.reserve(db.num_transactions() * factor);
  for (std::size_t k = 0; k < factor; ++k)
    out.insert(out.end(), db.transactions().begin(), db.transactions().end());
  return TransactionDB(std::move(out));
}

// ---- Synthetic data --------------------------------------------------------

TransactionDB generate_synthetic(const SyntheticParams& params) {
  const auto& [num_transactions, num_items, avg_width, pattern_len, seed] = params;
  if (num_transactions < 1 || num_items < 1) throw ConfigError("synthetic: transactions and items must be >= 1");
  if (!(avg_width >= 1) || !(pattern_len >= 1)) throw ConfigError("synthetic: widths must be >= 1");
  if (avg_width > static_cast<double>(num_items)) throw ConfigError("synthetic: avg_width exceeds num_items");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Item> any_item(0, static_cast<Item>(num_items - 1));
  auto clamp_len = [&](long v) { return static_cast<std::size_t>(std::clamp<long>(v, 1, static_cast<long>(num_items))); };

  // Pattern pool. Consecutive patterns share about half their items so that
  // longer correlated itemsets appear.
  const std::size_t num_patterns = std::clamp<std::size_t>(num_items, 1, 2000);
  std::poisson_distribution<long> pattern_size(pattern_len);
  std::exponential_distribution<double> weight_dist(1.0);
  std::bernoulli_distribution reuse(0.5);
  std::vector<Transaction> patterns;
  std::vector<double> weights;
  patterns.reserve(num_patterns);
  for (std::size_t k = 0; k < num_patterns; ++k) {
    const std::size_t len = clamp_len(pattern_size(rng));
    Transaction pat;
    if (!patterns.empty()) {
      for (Item i : patterns.back())
        if (pat.size() < len && reuse(rng)) pat.push_back(i);
    }
    while (pat.size() < len) {
      Item i = any_item(rng);
      if (std::find(pat.begin(), pat.end(), i) == pat.end()) pat.push_back(i);
    }
    patterns.push_back(std::move(pat));
    weights.push_back(weight_dist(rng));
  }
  std::discrete_distribution<std::size_t> pick_pattern(weights.begin(), weights.end());
  std::poisson_distribution<long> width_dist(avg_width);

  std::vector<Transaction> transactions;
  transactions.reserve(num_transactions);
  for (std::size_t n = 0; n < num_transactions; ++n) {
    const std::size_t width = clamp_len(width_dist(rng));
    Transaction t;
    t.reserve(width);
    auto add = [&](Item i) {
      if (t.size() < width && std::find(t.begin(), t.end(), i) == t.end()) t.push_back(i);
    };
    for (std::size_t attempts = 0; t.size() < width && attempts < 4 * width + 16; ++attempts) {
      Transaction pat = patterns[pick_pattern(rng)];
      // A pattern that overflows contributes a random subset.
      if (t.size() + pat.size() > width) std::shuffle(pat.begin(), pat.end(), rng);
      for (Item i : pat) add(i);
    }
    while (t.size() < width) add(any_item(rng));
    canonicalize(t);
    transactions.push_back(std::move(t));
  }
  return TransactionDB(std::move(transactions));
}

}  // namespace rdd_eclat
