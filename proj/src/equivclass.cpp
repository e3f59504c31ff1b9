#include "rdd_eclat/equivclass.hpp"

#include <cmath>
#include <numeric>

#include "rdd_eclat/errors.hpp"

namespace rdd_eclat {

std::size_t ClassList::total_atoms() const {
  std::size_t n = 0;
  for (const auto& c : classes) n += c.atoms.size();
  return n;
}

ClassList build_classes(const exec::Executor& ex, const VerticalDB& v, Support min_count,
                        const TriangularMatrix* matrix) {
  ClassList out;
  const std::size_t n = v.size();
  out.num_items = n;
  if (n < 2) return out;
  if (matrix && matrix->dim() != n) throw MiningError("build_classes: matrix dimension does not match vertical DB");

  std::vector<EquivalenceClass> all(n - 1);
  ex.run(n - 1, [&](std::size_t i) {
    auto& ec = all[i];
    ec.prefix_rank = static_cast<Rank>(i);
    ec.prefix = v.item_at(ec.prefix_rank);
    const Tidset& prefix_tids = v.tidset_at(ec.prefix_rank);
    for (Rank j = ec.prefix_rank + 1; j < n; ++j) {
      if (matrix && matrix->get(ec.prefix_rank, j) < min_count) continue;
      Tidset tids = intersect(prefix_tids, v.tidset_at(j));
      if (tids.support() < min_count) continue;
      ec.atoms.push_back({v.item_at(j), std::move(tids)});
    }
  });

  for (auto& ec : all) {
    if (ec.atoms.empty())
      out.empty_prefix_ranks.push_back(ec.prefix_rank);
    else
      out.classes.push_back(std::move(ec));
  }
  return out;
}

std::size_t hash_partition_id(Rank prefix_rank, std::size_t p) {
  if (p < 1) throw ConfigError("partition count must be >= 1");
  return prefix_rank % p;
}

std::size_t reverse_hash_partition_id(Rank prefix_rank, std::size_t p, ReverseHashMode mode) {
  if (p < 1) throw ConfigError("partition count must be >= 1");
  const std::size_t r = prefix_rank;
  if (r < p) return r;
  const std::size_t mirrored = (p - 1) - (r % p);
  if (mode == ReverseHashMode::kMirror) return mirrored;
  return (r / p) % 2 == 1 ? mirrored : r % p;
}

namespace {

template <typename PidFn>
PartitionAssignment assign(std::span<const EquivalenceClass> classes, std::size_t p, PidFn&& pid) {
  PartitionAssignment a;
  a.num_partitions = p;
  a.balance.assign(p, 0);
  for (const auto& ec : classes) {
    const std::size_t id = pid(ec.prefix_rank);
    a.mapping[ec.prefix_rank] = id;
    a.balance[id] += ec.atoms.size();
  }
  return a;
}

}  // namespace

PartitionAssignment default_partitioner(std::span<const EquivalenceClass> classes, std::size_t n) {
  if (n < 2) throw ConfigError("default partitioner needs at least 2 frequent items");
  for (const auto& ec : classes)
    if (ec.prefix_rank >= n - 1) throw MiningError("default partitioner: prefix rank out of range");
  return assign(classes, n - 1, [](Rank r) { return std::size_t{r}; });
}

PartitionAssignment hash_partitioner(std::span<const EquivalenceClass> classes, std::size_t p) {
  if (p < 1) throw ConfigError("partition count must be >= 1");
  return assign(classes, p, [p](Rank r) { return hash_partition_id(r, p); });
}

PartitionAssignment reverse_hash_partitioner(std::span<const EquivalenceClass> classes, std::size_t p,
                                             ReverseHashMode mode) {
  if (p < 1) throw ConfigError("partition count must be >= 1");
  return assign(classes, p, [p, mode](Rank r) { return reverse_hash_partition_id(r, p, mode); });
}

BalanceMetric balance_metric(const PartitionAssignment& assignment) {
  BalanceMetric m;
  m.totals = assignment.balance;
  const auto p = m.totals.size();
  if (p <= 1) return m;
  const double mean = std::accumulate(m.totals.begin(), m.totals.end(), 0.0) / static_cast<double>(p);
  if (mean == 0) return m;
  double var = 0;
  for (auto t : m.totals) var += (static_cast<double>(t) - mean) * (static_cast<double>(t) - mean);
  var /= static_cast<double>(p);
  m.cv = std::sqrt(var) / mean;
  return m;
}

exec::Partitioned<EquivalenceClass> place_classes(std::vector<EquivalenceClass> classes,
                                                  const PartitionAssignment& assignment) {
  return exec::partition_by(std::move(classes), assignment.num_partitions,
                            [&](const EquivalenceClass& ec) { return assignment.partition_of(ec.prefix_rank); });
}

}  // namespace rdd_eclat
