#include "rdd_eclat/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include "rdd_eclat/bench.hpp"
#include "rdd_eclat/errors.hpp"

namespace rdd_eclat {

namespace {

struct Options {
  std::string input;
  std::vector<std::string> algorithms{"v4"};
  std::optional<double> min_sup;
  std::optional<long long> min_count;
  std::size_t partitions = 10;
  std::string tri_matrix = "auto";
  std::optional<long long> workers;
  std::string output;
  std::string stats;
  std::vector<double> sweep_min_sup;
  std::vector<long long> scale_factors;
  std::size_t warmup = 0;
  std::uint64_t seed = 0;
  std::string generate;
};

std::size_t resolve_workers(const std::optional<long long>& flag) {
  long long w = 0;
  if (flag) {
    w = *flag;
  } else if (const char* env = std::getenv("ECLAT_WORKERS"); env && *env) {
    try {
      w = std::stoll(env);
    } catch (const std::exception&) {
      throw ConfigError(std::string("ECLAT_WORKERS is not an integer: ") + env);
    }
  } else {
    return exec::default_parallelism();
  }
  if (w < 1) throw ConfigError("workers must be >= 1");
  return static_cast<std::size_t>(w);
}

// "T,I,D,N": average width, average pattern length, transactions, items.
SyntheticParams parse_generate(const std::string& text, std::uint64_t seed) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw ConfigError("--generate expects T,I,D,N numbers, got '" + text + "'");
    }
  }
  if (v.size() != 4) throw ConfigError("--generate expects exactly four values T,I,D,N");
  for (double x : v)
    if (!(x >= 1)) throw ConfigError("--generate values must be >= 1");
  SyntheticParams p;
  p.avg_width = v[0];
  p.pattern_len = v[1];
  p.num_transactions = static_cast<std::size_t>(v[2]);
  p.num_items = static_cast<std::size_t>(v[3]);
  p.seed = seed;
  return p;
}

std::filesystem::path output_path_for(const std::filesystem::path& base, bool single_run, const RunRow& row,
                                      std::size_t factor) {
  if (single_run) return base;
  std::string tag = row.variant + "_" + row.min_support;
  if (factor != 1) tag += "_x" + std::to_string(factor);
  auto p = base;
  p.replace_filename(base.stem().string() + "." + tag + base.extension().string());
  return p;
}

int execute(const Options& opt) {
  if (!opt.generate.empty()) {
    if (opt.output.empty()) throw ConfigError("--generate requires --output");
    save_fimi(opt.output, generate_synthetic(parse_generate(opt.generate, opt.seed)));
    return kExitOk;
  }
  if (opt.input.empty()) throw ConfigError("--input is required");

  MiningConfig base;
  base.partitions = opt.partitions;
  base.tri_matrix = parse_tri_matrix_mode(opt.tri_matrix);
  base.workers = resolve_workers(opt.workers);
  base.validate();

  std::vector<Variant> variants;
  for (const auto& a : opt.algorithms) variants.push_back(parse_variant(a));
  if (variants.empty()) throw ConfigError("--algorithm is empty");

  std::vector<MinSupport> supports;
  if (!opt.sweep_min_sup.empty()) {
    if (opt.min_sup || opt.min_count) throw ConfigError("--sweep-min-sup excludes --min-sup and --min-count");
    for (double s : opt.sweep_min_sup) supports.push_back(MinSupport::relative(s));
  } else if (opt.min_sup) {
    supports.push_back(MinSupport::relative(*opt.min_sup));
  } else if (opt.min_count) {
    if (*opt.min_count < 1 || *opt.min_count > std::numeric_limits<Support>::max())
      throw ConfigError("--min-count must be a positive 32-bit count");
    supports.push_back(MinSupport::absolute(static_cast<Support>(*opt.min_count)));
  } else {
    throw ConfigError("one of --min-sup, --min-count or --sweep-min-sup is required");
  }

  std::vector<std::size_t> factors;
  for (long long f : opt.scale_factors) {
    if (f < 1) throw ConfigError("--scale-factors entries must be >= 1");
    factors.push_back(static_cast<std::size_t>(f));
  }
  if (factors.empty()) factors.push_back(1);

  const TransactionDB db = load_fimi(opt.input);
  const std::string name = std::filesystem::path(opt.input).filename().string();
  const bool single_run = factors.size() * supports.size() * variants.size() == 1;

  std::vector<RunRow> rows;
  for (std::size_t k : factors) {
    const TransactionDB scaled = k == 1 ? db : replicate(db, k);
    for (const auto& s : supports) {
      for (Variant v : variants) {
        MiningConfig cfg = base;
        cfg.variant = v;
        cfg.min_support = s;
        const auto result = timed_mine(scaled, cfg, opt.warmup);
        rows.push_back(make_row(k == 1 ? name : name + "x" + std::to_string(k), result));
        if (!opt.output.empty()) save_itemsets(output_path_for(opt.output, single_run, rows.back(), k), result.itemsets);
        std::cerr << rows.back().variant << " min_support=" << rows.back().min_support << " x" << k << ": "
                  << rows.back().num_frequent << " itemsets, " << rows.back().total_ms << " ms\n";
      }
    }
  }
  if (!opt.stats.empty()) append_csv(opt.stats, rows);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Parallel Eclat frequent-itemset miner and benchmark harness", "rdd-eclat"};
  Options opt;
  app.add_option("--input", opt.input, "FIMI transaction file");
  app.add_option("--algorithm", opt.algorithms, "apriori|v1|v2|v3|v4|v5|oracle, comma-separated for sweeps")
      ->delimiter(',');
  auto* sup = app.add_option("--min-sup", opt.min_sup, "relative minimum support in (0, 1]");
  auto* cnt = app.add_option("--min-count", opt.min_count, "absolute minimum support count");
  sup->excludes(cnt);
  cnt->excludes(sup);
  app.add_option("--partitions", opt.partitions, "equivalence-class partitions for v4/v5")->capture_default_str();
  app.add_option("--tri-matrix", opt.tri_matrix, "auto|on|off")->capture_default_str();
  app.add_option("--workers", opt.workers, "worker threads (falls back to ECLAT_WORKERS, then hardware)");
  app.add_option("--output", opt.output, "frequent-itemset output file (or generated dataset with --generate)");
  app.add_option("--stats", opt.stats, "CSV file to append run metrics to");
  app.add_option("--sweep-min-sup", opt.sweep_min_sup, "comma-separated relative supports")->delimiter(',');
  app.add_option("--scale-factors", opt.scale_factors, "comma-separated replication factors")->delimiter(',');
  app.add_option("--warmup", opt.warmup, "unrecorded repetitions before each measured run");
  app.add_option("--seed", opt.seed, "seed for --generate");
  app.add_option("--generate", opt.generate, "write a synthetic dataset T,I,D,N to --output");

  std::vector<const char*> argv{"rdd-eclat"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return execute(opt);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what() << '\n';
    return kExitDataset;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace rdd_eclat
