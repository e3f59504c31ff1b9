#pragma once

// Local partitioned dataflow engine. Collections are materialized eagerly;
// each stage runs its per-partition work on a fixed-size pool of workers and
// joins before returning, so stage outputs never depend on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <memory>
#include <numeric>
#include <span>
#include <thread>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rdd_eclat/errors.hpp"

namespace rdd_eclat::exec {

/// Worker count used when none is configured.
inline std::size_t default_parallelism() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

class Executor {
 public:
  explicit Executor(std::size_t workers = default_parallelism()) : workers_(workers) {
    if (workers_ < 1) throw ConfigError("worker count must be >= 1");
  }

  [[nodiscard]] std::size_t workers() const { return workers_; }

  /// Runs task(i) for every i in [0, count) on up to workers() threads and
  /// waits. If tasks throw, the exception of the lowest index is rethrown.
  template <typename Task>
  void run(std::size_t count, Task&& task) const {
    if (count == 0) return;
    std::vector<std::exception_ptr> errors(count);
    auto body = [&](std::atomic<std::size_t>& next) {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::atomic<std::size_t> next{0};
    const std::size_t threads = std::min(workers_, count);
    if (threads == 1) {
      body(next);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(threads - 1);
      for (std::size_t t = 1; t < threads; ++t) pool.emplace_back([&] { body(next); });
      body(next);
    }
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

 private:
  std::size_t workers_;
};

/// A logical sequence split into ordered partitions.
template <typename T>
class Partitioned {
 public:
  using value_type = T;

  Partitioned() : parts_(1) {}
  explicit Partitioned(std::vector<std::vector<T>> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) parts_.emplace_back();
  }

  [[nodiscard]] std::size_t partition_count() const { return parts_.size(); }
  [[nodiscard]] const std::vector<T>& partition(std::size_t i) const { return parts_[i]; }
  [[nodiscard]] std::vector<T>& partition(std::size_t i) { return parts_[i]; }
  [[nodiscard]] const std::vector<std::vector<T>>& partitions() const { return parts_; }

  [[nodiscard]] std::size_t size() const {
    std::size_t n = 0;
    for (const auto& p : parts_) n += p.size();
    return n;
  }

  /// Concatenation of all partitions in order.
  [[nodiscard]] std::vector<T> collect() const& {
    std::vector<T> out;
    out.reserve(size());
    for (const auto& p : parts_) out.insert(out.end(), p.begin(), p.end());
    return out;
  }

  [[nodiscard]] std::vector<T> collect() && {
    if (parts_.size() == 1) return std::move(parts_.front());
    std::vector<T> out;
    out.reserve(size());
    for (auto& p : parts_) std::move(p.begin(), p.end(), std::back_inserter(out));
    return out;
  }

 private:
  std::vector<std::vector<T>> parts_;
};

/// Splits a sequence into k contiguous, near-equal blocks (file-split layout).
template <typename T>
Partitioned<T> split_contiguous(std::span<const T> elements, std::size_t k) {
  if (k < 1) throw ConfigError("partition count must be >= 1");
  std::vector<std::vector<T>> parts(k);
  const std::size_t n = elements.size();
  std::size_t begin = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t len = n / k + (i < n % k ? 1 : 0);
    parts[i].assign(elements.begin() + begin, elements.begin() + begin + len);
    begin += len;
  }
  return Partitioned<T>(std::move(parts));
}

/// Round-robin redistribution: logical element i goes to partition i mod k.
template <typename T>
Partitioned<T> repartition(const Partitioned<T>& coll, std::size_t k) {
  if (k < 1) throw ConfigError("partition count must be >= 1");
  std::vector<std::vector<T>> parts(k);
  const std::size_t n = coll.size();
  for (std::size_t i = 0; i < k; ++i) parts[i].reserve(n / k + 1);
  std::size_t idx = 0;
  for (const auto& p : coll.partitions())
    for (const auto& x : p) parts[idx++ % k].push_back(x);
  return Partitioned<T>(std::move(parts));
}

template <typename T>
Partitioned<T> repartition(std::span<const T> elements, std::size_t k) {
  return repartition(Partitioned<T>({std::vector<T>(elements.begin(), elements.end())}), k);
}

/// Single partition holding partition 0, then partition 1, and so on.
template <typename T>
Partitioned<T> coalesce_to_one(Partitioned<T> coll) {
  return Partitioned<T>({std::move(coll).collect()});
}

/// fn(partition_elements, partition_index) -> std::vector<U>, one call per
/// partition, run concurrently.
template <typename T, typename Fn>
auto map_partitions(const Executor& ex, const Partitioned<T>& coll, Fn&& fn)
    -> Partitioned<typename std::invoke_result_t<Fn&, std::span<const T>, std::size_t>::value_type> {
  using U = typename std::invoke_result_t<Fn&, std::span<const T>, std::size_t>::value_type;
  std::vector<std::vector<U>> out(coll.partition_count());
  ex.run(coll.partition_count(), [&](std::size_t i) { out[i] = fn(std::span<const T>(coll.partition(i)), i); });
  return Partitioned<U>(std::move(out));
}

/// fn(element, std::vector<U>& out) appends zero or more outputs.
/// Within-partition order is preserved.
template <typename U, typename T, typename Fn>
Partitioned<U> flat_map(const Executor& ex, const Partitioned<T>& coll, Fn&& fn) {
  return map_partitions(ex, coll, [&](std::span<const T> part, std::size_t) {
    std::vector<U> out;
    out.reserve(part.size());
    for (const auto& x : part) fn(x, out);
    return out;
  });
}

template <typename T, typename Fn>
auto map(const Executor& ex, const Partitioned<T>& coll, Fn&& fn) -> Partitioned<std::invoke_result_t<Fn&, const T&>> {
  using U = std::invoke_result_t<Fn&, const T&>;
  return flat_map<U>(ex, coll, [&](const T& x, std::vector<U>& out) { out.push_back(fn(x)); });
}

template <typename T, typename Pred>
Partitioned<T> filter(const Executor& ex, const Partitioned<T>& coll, Pred&& pred) {
  return flat_map<T>(ex, coll, [&](const T& x, std::vector<T>& out) {
    if (pred(x)) out.push_back(x);
  });
}

/// Places element x in partition pid(x) of a p-way collection, keeping
/// relative order.
template <typename T, typename PartitionFn>
Partitioned<T> partition_by(std::vector<T> elements, std::size_t p, PartitionFn&& pid) {
  if (p < 1) throw ConfigError("partition count must be >= 1");
  std::vector<std::vector<T>> parts(p);
  for (auto& x : elements) {
    const std::size_t i = pid(x);
    if (i >= p) throw MiningError("partitioner returned out-of-range partition id");
    parts[i].push_back(std::move(x));
  }
  return Partitioned<T>(std::move(parts));
}

namespace detail {

template <typename K>
std::size_t key_partition(const K& key, std::size_t p) {
  return std::hash<K>{}(key) % p;
}

// Shuffle: each input partition buckets its pairs by output partition.
template <typename K, typename V>
std::vector<std::vector<std::vector<std::pair<K, V>>>> shuffle(const Executor& ex,
                                                               const Partitioned<std::pair<K, V>>& pairs,
                                                               std::size_t p) {
  std::vector<std::vector<std::vector<std::pair<K, V>>>> buckets(pairs.partition_count());
  ex.run(pairs.partition_count(), [&](std::size_t i) {
    auto& mine = buckets[i];
    mine.resize(p);
    for (const auto& kv : pairs.partition(i)) mine[key_partition(kv.first, p)].push_back(kv);
  });
  return buckets;
}

}  // namespace detail

/// One (key, values) element per distinct key; values keep input logical
/// order; keys appear in order of first occurrence within their hash-assigned
/// output partition.
template <typename K, typename V>
Partitioned<std::pair<K, std::vector<V>>> group_by_key(const Executor& ex, const Partitioned<std::pair<K, V>>& pairs,
                                                       std::size_t out_partitions) {
  if (out_partitions < 1) throw ConfigError("partition count must be >= 1");
  auto buckets = detail::shuffle(ex, pairs, out_partitions);
  std::vector<std::vector<std::pair<K, std::vector<V>>>> out(out_partitions);
  ex.run(out_partitions, [&](std::size_t o) {
    std::unordered_map<K, std::size_t> slot;
    auto& groups = out[o];
    for (auto& per_input : buckets) {
      for (auto& [k, v] : per_input[o]) {
        auto [it, fresh] = slot.try_emplace(k, groups.size());
        if (fresh) groups.emplace_back(k, std::vector<V>{});
        groups[it->second].second.push_back(std::move(v));
      }
    }
  });
  return Partitioned<std::pair<K, std::vector<V>>>(std::move(out));
}

/// Fused flat_map + reduce_by_key: emit(x, sink) calls sink(key, value) for
/// every pair derived from x, and pairs are combined map-side as they are
/// produced, without materializing the flat_map output.
template <typename K, typename V, typename T, typename Emit, typename Op>
Partitioned<std::pair<K, V>> reduce_by_key(const Executor& ex, const Partitioned<T>& coll, Emit&& emit, Op&& op,
                                           std::size_t out_partitions) {
  if (out_partitions < 1) throw ConfigError("partition count must be >= 1");
  // Map-side combine, preserving first-occurrence order per input partition.
  auto combined = map_partitions(ex, coll, [&](std::span<const T> part, std::size_t) {
    std::unordered_map<K, std::size_t> slot;
    std::vector<std::pair<K, V>> acc;
    auto sink = [&](const K& k, const V& v) {
      auto [it, fresh] = slot.try_emplace(k, acc.size());
      if (fresh)
        acc.emplace_back(k, v);
      else
        acc[it->second].second = op(acc[it->second].second, v);
    };
    for (const auto& x : part) emit(x, sink);
    return acc;
  });
  auto buckets = detail::shuffle(ex, combined, out_partitions);
  std::vector<std::vector<std::pair<K, V>>> out(out_partitions);
  ex.run(out_partitions, [&](std::size_t o) {
    std::unordered_map<K, std::size_t> slot;
    auto& acc = out[o];
    for (auto& per_input : buckets) {
      for (auto& [k, v] : per_input[o]) {
        auto [it, fresh] = slot.try_emplace(k, acc.size());
        if (fresh)
          acc.emplace_back(k, std::move(v));
        else
          acc[it->second].second = op(acc[it->second].second, v);
      }
    }
  });
  return Partitioned<std::pair<K, V>>(std::move(out));
}

/// Per-key fold with an associative, commutative op. Combines map-side first.
template <typename K, typename V, typename Op>
Partitioned<std::pair<K, V>> reduce_by_key(const Executor& ex, const Partitioned<std::pair<K, V>>& pairs, Op&& op,
                                           std::size_t out_partitions) {
  return reduce_by_key<K, V>(
      ex, pairs, [](const std::pair<K, V>& kv, auto& sink) { sink(kv.first, kv.second); }, std::forward<Op>(op),
      out_partitions);
}

/// Read-only value shared by all workers of a job.
template <typename T>
class Broadcast {
 public:
  explicit Broadcast(T value) : value_(std::make_shared<const T>(std::move(value))) {}
  [[nodiscard]] const T& value() const { return *value_; }
  const T& operator*() const { return *value_; }
  const T* operator->() const { return value_.get(); }

 private:
  std::shared_ptr<const T> value_;
};

/// Write-only shared aggregate. Each partition owns one partial state; the
/// partials are folded with `merge` at the stage boundary. `merge` must be
/// associative and commutative so the fold order does not matter.
template <typename T>
class Accumulator {
 public:
  using MergeFn = std::function<void(T& into, T&& from)>;

  Accumulator(T identity, MergeFn merge, std::size_t partitions)
      : identity_(std::move(identity)), merge_(std::move(merge)), partials_(partitions, identity_) {}

  [[nodiscard]] std::size_t partitions() const { return partials_.size(); }

  /// Partial state of one partition. Only that partition's task may touch it.
  T& local(std::size_t partition) { return partials_[partition]; }

  /// Folds the partials in partition order.
  [[nodiscard]] T value() const {
    std::vector<std::size_t> order(partials_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    return value_in_order(order);
  }

  /// Folds the partials in the given order (a permutation of partition ids).
  [[nodiscard]] T value_in_order(std::span<const std::size_t> order) const {
    T acc = identity_;
    for (std::size_t i : order) {
      T copy = partials_.at(i);
      merge_(acc, std::move(copy));
    }
    return acc;
  }

  /// Folds the partials in partition order, consuming them.
  [[nodiscard]] T take() {
    T acc = identity_;
    for (auto& p : partials_) merge_(acc, std::move(p));
    partials_.assign(partials_.size(), identity_);
    return acc;
  }

 private:
  T identity_;
  MergeFn merge_;
  std::vector<T> partials_;
};

}  // namespace rdd_eclat::exec
