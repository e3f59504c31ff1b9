#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdd_eclat/dataset.hpp"
#include "rdd_eclat/miner.hpp"

namespace rdd_eclat {

inline constexpr std::string_view kCsvHeader =
    "dataset,variant,min_support,p,tri_matrix,workers,num_frequent,total_ms,phase1_ms,phase2_ms,phase3_ms,phase4_ms,"
    "balance_cv";

/// One measured run.
struct RunRow {
  std::string dataset;
  std::string variant;
  std::string min_support;
  std::size_t p = 0;
  std::string tri_matrix;
  std::size_t workers = 0;
  std::size_t num_frequent = 0;
  double total_ms = 0;
  std::array<double, 4> phase_ms{};
  std::optional<double> balance_cv;
};

struct RunReport {
  std::vector<RunRow> rows;
};

RunRow make_row(std::string dataset, const MiningResult& result);

void write_csv_row(std::ostream& out, const RunRow& row);
/// Appends rows to a CSV file, writing the header first when the file is new
/// or empty.
void append_csv(const std::filesystem::path& path, std::span<const RunRow> rows);

/// One line per itemset: items ascending, space-separated, then " #SUP: n".
void write_itemsets(std::ostream& out, std::span<const Itemset> itemsets);
void save_itemsets(const std::filesystem::path& path, std::span<const Itemset> itemsets);

/// Runs `warmup` unrecorded repetitions, then one measured run.
MiningResult timed_mine(const TransactionDB& db, const MiningConfig& cfg, std::size_t warmup);

/// Replicates `base` by each factor (k copies concatenated) and mines each
/// replica with `cfg`; one row per factor.
RunReport run_scaling_suite(const TransactionDB& base, const std::string& dataset_name, const MiningConfig& cfg,
                            std::span<const std::size_t> factors, std::size_t warmup = 0);

}  // namespace rdd_eclat
