#include "rdd_eclat/vertical.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "rdd_eclat/errors.hpp"

namespace rdd_eclat {

namespace {

constexpr std::size_t kGallopRatio = 32;

// Exponential search in `large` for each element of `small`.
void gallop_intersect(std::span<const Tid> small, std::span<const Tid> large, std::vector<Tid>& out) {
  auto lo = large.begin();
  const auto end = large.end();
  for (Tid x : small) {
    std::size_t step = 1;
    auto hi = lo;
    while (hi != end && *hi < x) {
      lo = hi;
      const auto remaining = static_cast<std::size_t>(end - hi);
      hi += static_cast<std::ptrdiff_t>(std::min(step, remaining));
      step <<= 1;
    }
    lo = std::lower_bound(lo, hi == end ? end : hi + 1, x);
    if (lo == end) return;
    if (*lo == x) out.push_back(x);
  }
}

}  // namespace

Tidset intersect(const Tidset& a, const Tidset& b) {
  std::span<const Tid> x = a.tids();
  std::span<const Tid> y = b.tids();
  if (x.size() > y.size()) std::swap(x, y);
  std::vector<Tid> out;
  if (x.empty()) return {};
  out.reserve(x.size());
  if (y.size() / x.size() >= kGallopRatio) {
    gallop_intersect(x, y, out);
  } else {
    std::size_t i = 0, j = 0;
    while (i < x.size() && j < y.size()) {
      if (x[i] < y[j]) {
        ++i;
      } else if (y[j] < x[i]) {
        ++j;
      } else {
        out.push_back(x[i]);
        ++i;
        ++j;
      }
    }
  }
  assert(out.size() <= std::min(a.size(), b.size()));
  return Tidset::from_sorted(std::move(out));
}

Tidset merge_disjoint(const Tidset& a, const Tidset& b) {
  std::vector<Tid> out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return Tidset::from_sorted(std::move(out));
}

VerticalDB::VerticalDB(FrequentItemTable freq, std::vector<Tidset> tidsets)
    : freq_(std::move(freq)), tidsets_(std::move(tidsets)) {
  if (tidsets_.size() != freq_.size()) throw MiningError("vertical DB: tidset count does not match item table");
}

const Tidset& VerticalDB::tidset(Item item) const {
  auto r = freq_.rank_of(item);
  if (!r) throw MiningError("vertical DB: item " + std::to_string(item) + " is not frequent");
  return tidsets_[*r];
}

VerticalDB build_vertical(const TransactionDB& db, const FrequentItemTable& freq) {
  std::vector<Tidset> tidsets(freq.size());
  for (Rank r = 0; r < freq.size(); ++r) tidsets[r].raw().reserve(freq.support_at(r));
  Tid tid = 0;
  for (const auto& t : db.transactions()) {
    ++tid;
    for (Item i : t)
      if (auto r = freq.rank_of(i)) tidsets[*r].push_back(tid);
  }
  return VerticalDB(freq, std::move(tidsets));
}

}  // namespace rdd_eclat
