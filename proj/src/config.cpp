#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdd_eclat/errors.hpp"
#include "rdd_eclat/miner.hpp"

namespace rdd_eclat {

bool canonical_less(const Itemset& a, const Itemset& b) {
  if (a.items.size() != b.items.size()) return a.items.size() < b.items.size();
  return a.items < b.items;
}

void sort_canonical(std::vector<Itemset>& itemsets) { std::sort(itemsets.begin(), itemsets.end(), canonical_less); }

namespace {

constexpr std::pair<Variant, std::string_view> kVariantNames[] = {
    {Variant::kApriori, "apriori"}, {Variant::kV1, "v1"}, {Variant::kV2, "v2"},         {Variant::kV3, "v3"},
    {Variant::kV4, "v4"},           {Variant::kV5, "v5"}, {Variant::kOracle, "oracle"},
};

constexpr std::pair<TriMatrixMode, std::string_view> kTriMatrixNames[] = {
    {TriMatrixMode::kAuto, "auto"}, {TriMatrixMode::kOn, "on"}, {TriMatrixMode::kOff, "off"}};

}  // namespace

std::string_view to_string(Variant v) {
  for (auto [value, name] : kVariantNames)
    if (value == v) return name;
  return "?";
}

Variant parse_variant(std::string_view name) {
  for (auto [value, n] : kVariantNames)
    if (n == name) return value;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::string_view to_string(TriMatrixMode m) {
  for (auto [value, name] : kTriMatrixNames)
    if (value == m) return name;
  return "?";
}

TriMatrixMode parse_tri_matrix_mode(std::string_view name) {
  for (auto [value, n] : kTriMatrixNames)
    if (n == name) return value;
  throw ConfigError("unknown tri-matrix mode '" + std::string(name) + "'");
}

MinSupport MinSupport::relative(double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw ConfigError("relative minimum support must lie in (0, 1], got " + std::to_string(fraction));
  }
  MinSupport s;
  s.relative_ = true;
  s.fraction_ = fraction;
  return s;
}

MinSupport MinSupport::absolute(Support count) {
  if (count < 1) throw ConfigError("absolute minimum support must be >= 1");
  MinSupport s;
  s.count_ = count;
  return s;
}

Support MinSupport::resolve(std::size_t num_transactions) const {
  if (!relative_) return count_;
  // The epsilon keeps products like 0.01 * 100000 from rounding up past 1000.
  const double raw = std::ceil(fraction_ * static_cast<double>(num_transactions) - 1e-9);
  return static_cast<Support>(std::max(1.0, raw));
}

std::string MinSupport::to_string() const {
  if (!relative_) return std::to_string(count_);
  std::ostringstream os;
  os << fraction_;
  return os.str();
}

void MiningConfig::validate() const {
  if (partitions < 1) throw ConfigError("partitions must be >= 1");
  if (workers < 1) throw ConfigError("workers must be >= 1");
  if (max_depth < 3) throw ConfigError("recursion cap must be >= 3");
}

}  // namespace rdd_eclat
