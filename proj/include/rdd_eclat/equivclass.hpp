#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "rdd_eclat/dataset.hpp"
#include "rdd_eclat/exec.hpp"
#include "rdd_eclat/trimatrix.hpp"
#include "rdd_eclat/vertical.hpp"

namespace rdd_eclat {

/// Member of an equivalence class: the itemset prefix + {item}, with its tidset.
struct Atom {
  Item item = 0;
  Tidset tids;
};

/// All frequent 2-itemsets sharing one 1-item prefix. Atoms follow the
/// support-ascending item order and all come after the prefix in it.
struct EquivalenceClass {
  Item prefix = 0;
  Rank prefix_rank = 0;
  std::vector<Atom> atoms;
};

struct ClassList {
  /// Classes with at least one atom, ordered by prefix rank.
  std::vector<EquivalenceClass> classes;
  /// Prefix ranks in [0, n-2] whose classes came out empty.
  std::vector<Rank> empty_prefix_ranks;
  /// Number of frequent items the classes were built from.
  std::size_t num_items = 0;

  [[nodiscard]] std::size_t total_atoms() const;
};

/// One class per prefix rank in [0, n-2]. An atom {prefix, item_j} is kept
/// iff its support reaches min_count; when `matrix` is given, pairs below
/// min_count are rejected from it without intersecting. Prefixes are
/// processed in parallel on `ex`.
ClassList build_classes(const exec::Executor& ex, const VerticalDB& v, Support min_count,
                        const TriangularMatrix* matrix);

/// Which rule a reverse hash partitioner applies to ranks >= p.
enum class ReverseHashMode {
  kMirror,         ///< r >= p -> (p-1) - (r mod p)
  kBoustrophedon,  ///< alternate direction on every block of p ranks
};

/// Assignment of classes (by prefix rank) to p partitions, with the resulting
/// per-partition workload in atoms.
struct PartitionAssignment {
  std::size_t num_partitions = 1;
  std::map<Rank, std::size_t> mapping;
  std::vector<std::size_t> balance;

  [[nodiscard]] std::size_t partition_of(Rank prefix_rank) const { return mapping.at(prefix_rank); }
};

// Closed-form partition ids.
std::size_t hash_partition_id(Rank prefix_rank, std::size_t p);
std::size_t reverse_hash_partition_id(Rank prefix_rank, std::size_t p,
                                      ReverseHashMode mode = ReverseHashMode::kMirror);

/// p = n - 1 partitions, class of rank r in partition r. Requires n >= 2.
PartitionAssignment default_partitioner(std::span<const EquivalenceClass> classes, std::size_t n);
PartitionAssignment hash_partitioner(std::span<const EquivalenceClass> classes, std::size_t p);
PartitionAssignment reverse_hash_partitioner(std::span<const EquivalenceClass> classes, std::size_t p,
                                             ReverseHashMode mode = ReverseHashMode::kMirror);

struct BalanceMetric {
  std::vector<std::size_t> totals;
  /// Population standard deviation over mean; 0 when the mean is 0 or p = 1.
  double cv = 0;
};

BalanceMetric balance_metric(const PartitionAssignment& assignment);

/// Lays the classes out as a p-way collection following the assignment.
exec::Partitioned<EquivalenceClass> place_classes(std::vector<EquivalenceClass> classes,
                                                  const PartitionAssignment& assignment);

}  // namespace rdd_eclat
