#include <algorithm>
#include <cassert>
#include <string>

#include "rdd_eclat/errors.hpp"
#include "rdd_eclat/miner.hpp"

namespace rdd_eclat {

namespace {

class BottomUp {
 public:
  BottomUp(Support min_count, std::size_t max_depth, std::vector<Itemset>& out)
      : min_count_(min_count), max_depth_(max_depth), out_(out) {}

  // `prefix` holds the shared items of every atom in `atoms`, in item order.
  void run(std::vector<Item>& prefix, const std::vector<Atom>& atoms) {
    const std::size_t length = prefix.size() + 2;
    if (length > max_depth_ && atoms.size() > 1) {
      throw MiningError("bottom_up: recursion exceeded the depth cap of " + std::to_string(max_depth_));
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      std::vector<Atom> next;
      prefix.push_back(atoms[i].item);
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        Tidset tids = intersect(atoms[i].tids, atoms[j].tids);
        assert(tids.size() <= std::min(atoms[i].tids.size(), atoms[j].tids.size()));
        if (tids.support() < min_count_) continue;
        emit(prefix, atoms[j].item, tids.support());
        next.push_back({atoms[j].item, std::move(tids)});
      }
      if (!next.empty()) run(prefix, next);
      prefix.pop_back();
    }
  }

 private:
  void emit(const std::vector<Item>& prefix, Item last, Support support) {
    Itemset s;
    s.items.reserve(prefix.size() + 1);
    s.items = prefix;
    s.items.push_back(last);
    std::sort(s.items.begin(), s.items.end());
    s.support = support;
    out_.push_back(std::move(s));
  }

  Support min_count_;
  std::size_t max_depth_;
  std::vector<Itemset>& out_;
};

}  // namespace

std::vector<Itemset> bottom_up(const EquivalenceClass& ec, Support min_count, std::size_t max_depth) {
  std::vector<Itemset> out;
  std::vector<Item> prefix{ec.prefix};
  BottomUp(min_count, max_depth, out).run(prefix, ec.atoms);
  return out;
}

}  // namespace rdd_eclat
