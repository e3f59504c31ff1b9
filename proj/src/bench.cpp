#include "rdd_eclat/bench.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "rdd_eclat/errors.hpp"

namespace rdd_eclat {

RunRow make_row(std::string dataset, const MiningResult& result) {
  RunRow row;
  row.dataset = std::move(dataset);
  row.variant = std::string(to_string(result.config.variant));
  row.min_support = result.config.min_support.to_string();
  row.p = result.balance ? result.balance->totals.size() : result.config.partitions;
  row.tri_matrix = std::string(to_string(result.config.tri_matrix));
  row.workers = result.config.workers;
  row.num_frequent = result.itemsets.size();
  row.total_ms = result.total_ms;
  row.phase_ms = result.phase_ms;
  if (result.balance) row.balance_cv = result.balance->cv;
  return row;
}

void write_csv_row(std::ostream& out, const RunRow& row) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3);
  os << row.dataset << ',' << row.variant << ',' << row.min_support << ',' << row.p << ',' << row.tri_matrix << ','
     << row.workers << ',' << row.num_frequent << ',' << row.total_ms;
  for (double ms : row.phase_ms) os << ',' << ms;
  os << ',';
  if (row.balance_cv) os << std::setprecision(6) << *row.balance_cv;
  os << '\n';
  out << os.str();
}

void append_csv(const std::filesystem::path& path, std::span<const RunRow> rows) {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw ConfigError("cannot open stats file '" + path.string() + "'");
  if (fresh) out << kCsvHeader << '\n';
  for (const auto& row : rows) write_csv_row(out, row);
}

void write_itemsets(std::ostream& out, std::span<const Itemset> itemsets) {
  std::string line;
  for (const auto& s : itemsets) {
    line.clear();
    for (std::size_t i = 0; i < s.items.size(); ++i) {
      if (i) line += ' ';
      line += std::to_string(s.items[i]);
    }
    line += " #SUP: ";
    line += std::to_string(s.support);
    line += '\n';
    out << line;
  }
}

void save_itemsets(const std::filesystem::path& path, std::span<const Itemset> itemsets) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ConfigError("cannot open output file '" + path.string() + "'");
  write_itemsets(out, itemsets);
}

MiningResult timed_mine(const TransactionDB& db, const MiningConfig& cfg, std::size_t warmup) {
  for (std::size_t i = 0; i < warmup; ++i) (void)mine(db, cfg);
  return mine(db, cfg);
}

RunReport run_scaling_suite(const TransactionDB& base, const std::string& dataset_name, const MiningConfig& cfg,
                            std::span<const std::size_t> factors, std::size_t warmup) {
  RunReport report;
  for (std::size_t k : factors) {
    const TransactionDB db = k == 1 ? base : replicate(base, k);
    const auto result = timed_mine(db, cfg, warmup);
    report.rows.push_back(make_row(k == 1 ? dataset_name : dataset_name + "x" + std::to_string(k), result));
  }
  return report;
}

}  // namespace rdd_eclat
