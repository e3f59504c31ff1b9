#include <algorithm>
#include <chrono>
#include <set>

#include "rdd_eclat/errors.hpp"
#include "rdd_eclat/miner.hpp"

namespace rdd_eclat {

Support scan_support(const TransactionDB& db, std::span<const Item> items) {
  Support n = 0;
  for (const auto& t : db.transactions())
    if (std::includes(t.begin(), t.end(), items.begin(), items.end())) ++n;
  return n;
}

namespace {

class Enumerator {
 public:
  Enumerator(const TransactionDB& db, Support min_count, std::size_t max_len, std::vector<Itemset>& out)
      : db_(db), min_count_(min_count), max_len_(max_len), out_(out) {
    std::set<Item> present;
    for (const auto& t : db.transactions()) present.insert(t.begin(), t.end());
    items_.assign(present.begin(), present.end());
  }

  void run() {
    std::vector<Item> current;
    extend(current, 0);
  }

 private:
  void extend(std::vector<Item>& current, std::size_t from) {
    if (max_len_ != 0 && current.size() >= max_len_) return;
    for (std::size_t i = from; i < items_.size(); ++i) {
      if (++examined_ > kOracleCandidateLimit) {
        throw MiningError("oracle: more than " + std::to_string(kOracleCandidateLimit) +
                          " candidates; cap the itemset length");
      }
      current.push_back(items_[i]);
      const Support s = scan_support(db_, current);
      if (s >= min_count_) {
        out_.push_back({current, s});
        extend(current, i + 1);
      }
      current.pop_back();
    }
  }

  const TransactionDB& db_;
  Support min_count_;
  std::size_t max_len_;
  std::vector<Itemset>& out_;
  std::vector<Item> items_;
  std::size_t examined_ = 0;
};

}  // namespace

MiningResult oracle(const TransactionDB& db, Support min_count, std::size_t max_len) {
  MiningResult result;
  const auto start = std::chrono::steady_clock::now();
  Enumerator(db, std::max<Support>(min_count, 1), max_len, result.itemsets).run();
  sort_canonical(result.itemsets);
  result.total_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  result.phase_ms[0] = result.total_ms;
  result.min_count = min_count;
  result.num_transactions = db.num_transactions();
  return result;
}

}  // namespace rdd_eclat
