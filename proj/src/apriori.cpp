// Level-wise Apriori baseline in the two-phase shape of Spark Apriori ports:
// frequent items first, then one candidate-generation/counting round per
// level, counting parallelized over transaction partitions.

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <unordered_set>

#include "rdd_eclat/miner.hpp"

namespace rdd_eclat {

namespace {

using Clock = std::chrono::steady_clock;

struct ItemsetHash {
  std::size_t operator()(const std::vector<Item>& v) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Item i : v) {
      h ^= i;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

using CandidateIndex = std::unordered_map<std::vector<Item>, std::size_t, ItemsetHash>;

// Self-join of lexicographically sorted L_k on a shared (k-1)-prefix, then
// prune candidates with an infrequent k-subset.
std::vector<std::vector<Item>> generate_candidates(const std::vector<std::vector<Item>>& level) {
  std::unordered_set<std::vector<Item>, ItemsetHash> frequent(level.begin(), level.end());
  std::vector<std::vector<Item>> candidates;
  std::vector<Item> subset;
  for (std::size_t a = 0; a < level.size(); ++a) {
    const auto& x = level[a];
    for (std::size_t b = a + 1; b < level.size(); ++b) {
      const auto& y = level[b];
      if (!std::equal(x.begin(), x.end() - 1, y.begin())) break;
      std::vector<Item> cand = x;
      cand.push_back(y.back());
      bool all_frequent = true;
      // Dropping either of the last two items gives x or y; check the rest.
      for (std::size_t drop = 0; drop + 2 < cand.size() && all_frequent; ++drop) {
        subset.clear();
        for (std::size_t i = 0; i < cand.size(); ++i)
          if (i != drop) subset.push_back(cand[i]);
        all_frequent = frequent.contains(subset);
      }
      if (all_frequent) candidates.push_back(std::move(cand));
    }
  }
  return candidates;
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > cap) return cap + 1;
  }
  return r;
}

// Adds one to counts[idx] for every candidate contained in transaction t.
class CandidateCounter {
 public:
  CandidateCounter(const std::vector<std::vector<Item>>& candidates, const CandidateIndex& index,
                   const std::vector<char>& live_item, std::size_t k)
      : candidates_(candidates), index_(index), live_(live_item), k_(k) {}

  void count(const Transaction& t, std::vector<Support>& counts) {
    projected_.clear();
    for (Item i : t)
      if (i < live_.size() && live_[i]) projected_.push_back(i);
    if (projected_.size() < k_) return;
    if (binomial_capped(projected_.size(), k_, candidates_.size()) <= candidates_.size()) {
      subset_.clear();
      enumerate(0, counts);
    } else {
      for (std::size_t c = 0; c < candidates_.size(); ++c) {
        const auto& cand = candidates_[c];
        if (std::includes(projected_.begin(), projected_.end(), cand.begin(), cand.end())) ++counts[c];
      }
    }
  }

 private:
  void enumerate(std::size_t from, std::vector<Support>& counts) {
    if (subset_.size() == k_) {
      if (auto it = index_.find(subset_); it != index_.end()) ++counts[it->second];
      return;
    }
    const std::size_t need = k_ - subset_.size();
    for (std::size_t i = from; i + need <= projected_.size(); ++i) {
      subset_.push_back(projected_[i]);
      enumerate(i + 1, counts);
      subset_.pop_back();
    }
  }

  const std::vector<std::vector<Item>>& candidates_;
  const CandidateIndex& index_;
  const std::vector<char>& live_;
  std::size_t k_;
  std::vector<Item> projected_;
  std::vector<Item> subset_;
};

}  // namespace

MiningResult apriori_baseline(const exec::Executor& ex, const TransactionDB& db, Support min_count) {
  MiningResult result;
  const auto start = Clock::now();
  auto parts = exec::split_contiguous(db.transactions(), ex.workers());

  // Phase 1: frequent items.
  auto counted = exec::reduce_by_key<Item, Support>(
      ex, parts, [](const Transaction& t, auto& sink) {
        for (Item i : t) sink(i, Support{1});
      },
      [](Support a, Support b) { return a + b; }, ex.workers());
  std::vector<std::vector<Item>> level;
  for (const auto& [item, n] : std::move(counted).collect()) {
    if (n < min_count) continue;
    result.itemsets.push_back({{item}, n});
    level.push_back({item});
  }
  std::sort(level.begin(), level.end());
  const auto phase1_end = Clock::now();
  result.phase_ms[0] = std::chrono::duration<double, std::milli>(phase1_end - start).count();

  // Phase 2: levels k >= 2.
  for (std::size_t k = 2; !level.empty(); ++k) {
    auto candidates = generate_candidates(level);
    if (candidates.empty()) break;
    CandidateIndex index;
    index.reserve(candidates.size());
    Item max_item = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      index.emplace(candidates[c], c);
      max_item = std::max(max_item, candidates[c].back());
    }
    // Only items of some candidate can contribute.
    std::vector<char> live(std::size_t{max_item} + 1, 0);
    for (const auto& c : candidates)
      for (Item i : c) live[i] = 1;

    exec::Accumulator<std::vector<Support>> acc(
        std::vector<Support>(candidates.size(), 0),
        [](std::vector<Support>& into, std::vector<Support>&& from) {
          for (std::size_t i = 0; i < into.size(); ++i) into[i] += from[i];
        },
        parts.partition_count());
    ex.run(parts.partition_count(), [&](std::size_t p) {
      CandidateCounter counter(candidates, index, live, k);
      auto& counts = acc.local(p);
      for (const auto& t : parts.partition(p)) counter.count(t, counts);
    });
    const auto counts = acc.take();

    level.clear();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (counts[c] < min_count) continue;
      result.itemsets.push_back({candidates[c], counts[c]});
      level.push_back(std::move(candidates[c]));
    }
  }
  const auto end = Clock::now();
  result.phase_ms[1] = std::chrono::duration<double, std::milli>(end - phase1_end).count();
  result.total_ms = std::chrono::duration<double, std::milli>(end - start).count();
  sort_canonical(result.itemsets);
  result.min_count = min_count;
  result.num_transactions = db.num_transactions();
  return result;
}

}  // namespace rdd_eclat
