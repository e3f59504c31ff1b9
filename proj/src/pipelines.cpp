// The five Eclat pipelines. Each phase is a composition of exec stages; the
// phase boundaries are where wall-clock time is sampled.

#include <algorithm>
#include <cassert>
#include <chrono>
#include <unordered_map>

#include "rdd_eclat/errors.hpp"
#include "rdd_eclat/miner.hpp"
#include "rdd_eclat/trimatrix.hpp"
#include "rdd_eclat/vertical.hpp"

namespace rdd_eclat {

namespace {

using Clock = std::chrono::steady_clock;
using ItemTid = std::pair<Item, Tid>;

class PhaseTimer {
 public:
  explicit PhaseTimer(MiningResult& r) : result_(r), start_(Clock::now()), mark_(start_) {}

  void end_phase(std::size_t phase) {
    const auto now = Clock::now();
    result_.phase_ms[phase] = std::chrono::duration<double, std::milli>(now - mark_).count();
    mark_ = now;
  }
  void finish() { result_.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count(); }

 private:
  MiningResult& result_;
  Clock::time_point start_;
  Clock::time_point mark_;
};

bool matrix_enabled(TriMatrixMode m) { return m != TriMatrixMode::kOff; }

void emit_items(const FrequentItemTable& freq, std::vector<Itemset>& out) {
  for (const auto& e : freq.entries()) out.push_back({{e.item}, e.support});
}

// (item, tid) pairs for a single-partition collection; tid = position + 1.
exec::Partitioned<ItemTid> item_tid_pairs(const exec::Executor& ex, const exec::Partitioned<Transaction>& single) {
  assert(single.partition_count() == 1);
  return exec::map_partitions(ex, single, [](std::span<const Transaction> part, std::size_t) {
    std::vector<ItemTid> pairs;
    Tid tid = 1;
    for (const auto& t : part) {
      for (Item i : t) pairs.emplace_back(i, tid);
      ++tid;
    }
    return pairs;
  });
}

// Collects grouped (item, tids) pairs into rank order of `freq`, dropping
// items that are not in it.
std::vector<Tidset> tidsets_by_rank(exec::Partitioned<std::pair<Item, std::vector<Tid>>> grouped,
                                    const FrequentItemTable& freq) {
  std::vector<Tidset> by_rank(freq.size());
  for (std::size_t p = 0; p < grouped.partition_count(); ++p) {
    for (auto& [item, tids] : grouped.partition(p)) {
      if (auto r = freq.rank_of(item)) by_rank[*r] = Tidset::from_sorted(std::move(tids));
    }
  }
  return by_rank;
}

// Phase 1 of V2..V5: parallel word count over the file splits.
FrequentItemTable frequent_items_word_count(const exec::Executor& ex, const exec::Partitioned<Transaction>& parts,
                                            Support min_count) {
  auto counts = exec::reduce_by_key<Item, Support>(
      ex, parts, [](const Transaction& t, auto& sink) {
        for (Item i : t) sink(i, Support{1});
      },
      [](Support a, Support b) { return a + b; }, ex.workers());
  std::vector<ItemCount> frequent;
  for (const auto& [item, n] : std::move(counts).collect())
    if (n >= min_count) frequent.push_back({item, n});
  return FrequentItemTable::from_counts(std::move(frequent), min_count);
}

// Phase 2 of V2: materialized filtered transactions.
exec::Partitioned<Transaction> filter_partitions(const exec::Executor& ex, const exec::Partitioned<Transaction>& parts,
                                                 const exec::Broadcast<FrequentItemTable>& freq) {
  return exec::flat_map<Transaction>(ex, parts, [&](const Transaction& t, std::vector<Transaction>& out) {
    auto f = filter_transaction(t, *freq);
    if (!f.empty()) out.push_back(std::move(f));
  });
}

// Per-split output of the V3..V5 filter pass: tids are local to the split
// (1-based over its non-empty filtered transactions), indexed by rank.
struct SplitScan {
  std::vector<std::vector<Tid>> tids_by_rank;
  Tid kept = 0;
};

// Phase 2 of V3..V5: one pass per split filters each transaction, adds its
// pairs to the matrix accumulator and appends its local tid to the tid lists
// of its items. Filtered transactions are never materialized.
std::vector<SplitScan> filter_scan(const exec::Executor& ex, const exec::Partitioned<Transaction>& parts,
                                   const exec::Broadcast<FrequentItemTable>& freq,
                                   std::optional<TriangularMatrix>& matrix) {
  const bool count = matrix.has_value();
  exec::Accumulator<TriangularMatrix> acc(
      TriangularMatrix(count ? freq->size() : 0), [](TriangularMatrix& into, TriangularMatrix&& from) { into += from; },
      count ? parts.partition_count() : 0);
  // Flat item -> rank + 1 table (0 = infrequent) for the inner loop.
  Item max_item = 0;
  for (const auto& e : freq->entries()) max_item = std::max(max_item, e.item);
  std::vector<Rank> rank1(freq->size() == 0 ? 0 : std::size_t{max_item} + 1, 0);
  for (Rank r = 0; r < freq->size(); ++r) rank1[freq->item_at(r)] = r + 1;

  std::vector<SplitScan> scans(parts.partition_count());
  const double total = static_cast<double>(std::max<std::size_t>(parts.size(), 1));
  ex.run(parts.partition_count(), [&](std::size_t p) {
    auto& scan = scans[p];
    const auto& part = parts.partition(p);
    // Expected share of each item's tids in this split.
    const double share = static_cast<double>(part.size()) / total;
    scan.tids_by_rank.resize(freq->size());
    for (Rank r = 0; r < freq->size(); ++r)
      scan.tids_by_rank[r].reserve(static_cast<std::size_t>(share * freq->support_at(r) * 1.1) + 16);
    std::vector<Rank> ranks;
    const Rank* lookup = rank1.data();
    const std::size_t limit = rank1.size();
    std::vector<Tid>* tids = scan.tids_by_rank.data();
    Tid kept = 0;
    for (const auto& t : part) {
      if (ranks.size() < t.size()) ranks.resize(t.size());
      std::size_t n = 0;
      const Tid tid = kept + 1;
      for (Item i : t) {
        const Rank r1 = i < limit ? lookup[i] : 0;
        if (r1 == 0) continue;
        ranks[n++] = r1 - 1;
        tids[r1 - 1].push_back(tid);
      }
      if (n == 0) continue;
      kept = tid;
      if (count && n >= 2) {
        // Filtered transactions are short: insertion sort.
        for (std::size_t a = 1; a < n; ++a)
          for (std::size_t b = a; b > 0 && ranks[b - 1] > ranks[b]; --b) std::swap(ranks[b - 1], ranks[b]);
        acc.local(p).add_transaction(std::span<const Rank>(ranks.data(), n));
      }
    }
    scan.kept = kept;
  });
  if (count) matrix = acc.take();
  return scans;
}

// Phase 3 of V3..V5: shift local tids by the sizes of the preceding splits
// and merge the per-split tidsets through a hashmap accumulator.
VerticalDB accumulate_vertical(const exec::Executor& ex, std::vector<SplitScan> scans,
                               const FrequentItemTable& freq) {
  using TidMap = std::unordered_map<Rank, Tidset>;
  std::vector<Tid> offsets(scans.size(), 0);
  for (std::size_t p = 1; p < scans.size(); ++p) offsets[p] = offsets[p - 1] + scans[p - 1].kept;

  exec::Accumulator<TidMap> acc(
      TidMap{},
      [](TidMap& into, TidMap&& from) {
        for (auto& [rank, tids] : from) {
          auto [it, fresh] = into.try_emplace(rank, std::move(tids));
          if (!fresh) it->second = merge_disjoint(it->second, tids);
        }
      },
      scans.size());
  ex.run(scans.size(), [&](std::size_t p) {
    auto& local = acc.local(p);
    for (Rank r = 0; r < scans[p].tids_by_rank.size(); ++r) {
      auto& tids = scans[p].tids_by_rank[r];
      if (tids.empty()) continue;
      for (Tid& t : tids) t += offsets[p];
      local.emplace(r, Tidset::from_sorted(std::move(tids)));
    }
  });
  TidMap merged = acc.take();

  std::vector<Tidset> by_rank(freq.size());
  for (Rank r = 0; r < freq.size(); ++r) {
    auto it = merged.find(r);
    if (it == merged.end() || it->second.support() != freq.support_at(r))
      throw MiningError("accumulated supports disagree with phase-1 counts");
    by_rank[r] = std::move(it->second);
  }
  return VerticalDB(freq, std::move(by_rank));
}

// Shared final phase: classes, partitioning, parallel Bottom-Up.
void mine_classes(const exec::Executor& ex, const VerticalDB& v, const TriangularMatrix* matrix,
                  const MiningConfig& cfg, Support min_count, MiningResult& result) {
  ClassList cl = build_classes(ex, v, min_count, matrix);
  for (const auto& ec : cl.classes) {
    for (const auto& a : ec.atoms) {
      Itemset pair{{ec.prefix, a.item}, a.tids.support()};
      std::sort(pair.items.begin(), pair.items.end());
      result.itemsets.push_back(std::move(pair));
    }
  }
  if (cl.num_items < 2) return;

  PartitionAssignment assignment;
  switch (cfg.variant) {
    case Variant::kV4:
      assignment = hash_partitioner(cl.classes, cfg.partitions);
      break;
    case Variant::kV5:
      assignment = reverse_hash_partitioner(cl.classes, cfg.partitions, cfg.reverse_mode);
      break;
    default:
      assignment = default_partitioner(cl.classes, cl.num_items);
      break;
  }
  result.balance = balance_metric(assignment);

  auto placed = place_classes(std::move(cl.classes), assignment);
  auto found = exec::map_partitions(ex, placed, [&](std::span<const EquivalenceClass> part, std::size_t) {
    std::vector<Itemset> out;
    for (const auto& ec : part) {
      auto sets = bottom_up(ec, min_count, cfg.max_depth);
      std::move(sets.begin(), sets.end(), std::back_inserter(out));
    }
    return out;
  });
  for (auto& part : found.partitions())
    result.itemsets.insert(result.itemsets.end(), part.begin(), part.end());
}

MiningResult run_v1(const exec::Executor& ex, const TransactionDB& db, const MiningConfig& cfg, Support min_count) {
  MiningResult result;
  PhaseTimer timer(result);

  // Phase 1: unpartitioned (item, tid) pairs, grouped into tidsets.
  exec::Partitioned<Transaction> single(
      {std::vector<Transaction>(db.transactions().begin(), db.transactions().end())});
  auto grouped = exec::group_by_key(ex, item_tid_pairs(ex, single), ex.workers());
  std::vector<ItemCount> counts;
  for (const auto& part : grouped.partitions())
    for (const auto& [item, tids] : part)
      if (tids.size() >= min_count) counts.push_back({item, static_cast<Support>(tids.size())});
  auto freq = FrequentItemTable::from_counts(std::move(counts), min_count);
  VerticalDB v(freq, tidsets_by_rank(std::move(grouped), freq));
  emit_items(freq, result.itemsets);
  timer.end_phase(0);

  // Phase 2: pair counts over the raw transactions.
  std::optional<TriangularMatrix> matrix;
  if (matrix_enabled(cfg.tri_matrix) && freq.size() >= 2) {
    auto parts = exec::repartition(single, ex.workers());
    matrix = count_pairs(ex, parts, freq);
  }
  timer.end_phase(1);

  // Phase 3.
  mine_classes(ex, v, matrix ? &*matrix : nullptr, cfg, min_count, result);
  timer.end_phase(2);
  timer.finish();
  return result;
}

MiningResult run_filtered(const exec::Executor& ex, const TransactionDB& db, const MiningConfig& cfg,
                          Support min_count) {
  MiningResult result;
  PhaseTimer timer(result);

  // Phase 1.
  auto parts = exec::split_contiguous(db.transactions(), ex.workers());
  exec::Broadcast<FrequentItemTable> freq(frequent_items_word_count(ex, parts, min_count));
  emit_items(*freq, result.itemsets);
  timer.end_phase(0);

  // Phase 2.
  std::optional<TriangularMatrix> matrix;
  const bool use_matrix = matrix_enabled(cfg.tri_matrix) && freq->size() >= 2;
  VerticalDB v;
  if (cfg.variant == Variant::kV2) {
    auto filtered = filter_partitions(ex, parts, freq);
    if (use_matrix) matrix = count_pairs(ex, filtered, *freq);
    timer.end_phase(1);

    // Phase 3: vertical DB.
    auto single = exec::coalesce_to_one(std::move(filtered));
    auto grouped = exec::group_by_key(ex, item_tid_pairs(ex, single), ex.workers());
    v = VerticalDB(*freq, tidsets_by_rank(std::move(grouped), *freq));
  } else {
    if (use_matrix) matrix.emplace(freq->size());
    auto scans = filter_scan(ex, parts, freq, matrix);
    timer.end_phase(1);

    // Phase 3.
    v = accumulate_vertical(ex, std::move(scans), *freq);
  }
  timer.end_phase(2);

  // Phase 4.
  mine_classes(ex, v, matrix ? &*matrix : nullptr, cfg, min_count, result);
  timer.end_phase(3);
  timer.finish();
  return result;
}

}  // namespace

MiningResult mine(const TransactionDB& db, const MiningConfig& cfg) {
  cfg.validate();
  const Support min_count = cfg.min_support.resolve(db.num_transactions());
  exec::Executor ex(cfg.workers);

  MiningResult result;
  switch (cfg.variant) {
    case Variant::kApriori:
      result = apriori_baseline(ex, db, min_count);
      break;
    case Variant::kOracle:
      result = oracle(db, min_count, cfg.max_oracle_len);
      break;
    case Variant::kV1:
      result = run_v1(ex, db, cfg, min_count);
      break;
    case Variant::kV2:
    case Variant::kV3:
    case Variant::kV4:
    case Variant::kV5:
      result = run_filtered(ex, db, cfg, min_count);
      break;
  }
  sort_canonical(result.itemsets);
  result.config = cfg;
  result.min_count = min_count;
  result.num_transactions = db.num_transactions();
  return result;
}

MiningResult mine(const std::filesystem::path& db_path, const MiningConfig& cfg) {
  cfg.validate();
  return mine(load_fimi(db_path), cfg);
}

}  // namespace rdd_eclat
