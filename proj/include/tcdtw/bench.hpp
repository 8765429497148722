#pragma once

#include "tcdtw/cascade.hpp"
#include "tcdtw/core.hpp"
#include "tcdtw/ingest.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tcdtw {

  struct BenchConfig {
    std::vector<std::filesystem::path> data;
    Format format = Format::Native;
    std::vector<Method> methods{Method::None, Method::LbMv, Method::LbTi, Method::LbPc, Method::TcDtw};
    std::vector<std::size_t> windows{10, 20};
    /// Dimension counts to keep; nullopt means every dimension.
    std::vector<std::optional<std::size_t>> dims{std::nullopt};
    std::uint64_t seed = 42;
    std::size_t reps = 10;
    bool tune = true;
    TuneMetric tune_metric = TuneMetric::Work;
    TuneGrids grids;
    /// Worker threads for query dispatch; 0 means hardware concurrency.
    std::size_t threads = 0;
    double query_frac = kDefaultQueryFraction;
    /// P, K, w, min_cell_frac and untuned thresholds come from here.
    SearchParams base;

    /// Throws ConfigError. Checks file existence but does not read the files.
    void validate() const;
  };

  /// One (dataset, method, window, dims) row.
  struct RunReport {
    std::string dataset;
    Method method = Method::None;
    std::size_t window = 0;
    std::size_t dims = 0;
    double skip_pct = 0.0;
    double speedup = 1.0;
    double ideal_speedup = 1.0;
    std::uint64_t dtw_computed = 0;
    std::uint64_t dtw_skipped = 0;
    /// Averages over repetitions. lb/dtw times are summed over queries, total is the batch wall clock.
    double lb_time_s = 0.0;
    double dtw_time_s = 0.0;
    double total_time_s = 0.0;
    std::uint64_t seed = 0;

    std::size_t threads = 1;
    std::size_t queries = 0;
    std::size_t candidates = 0;
    SearchParams params;
    /// NN answers of the first repetition, used for cross-method agreement checks.
    std::vector<std::size_t> nn_index;
    std::vector<double> nn_distance;
  };

  /// Loads, normalizes, and benchmarks every file of the config. Throws ConfigError before any run
  /// on a bad config, ParseError or InvalidInput on bad data.
  std::vector<RunReport> run_benchmark(BenchConfig const& config);

  /// Benchmarks already-normalized datasets; `config.data` and `config.format` are ignored.
  std::vector<RunReport> run_benchmark(std::span<Dataset const> datasets, BenchConfig const& config);

  enum class EmitFormat { Csv, Table, Json };

  std::optional<EmitFormat> parse_emit_format(std::string_view name) noexcept;

  /// Machine description printed in table and JSON output.
  struct RunMeta {
    std::size_t threads = 1;
    std::string host;
    bool show_ideal = false;
  };

  RunMeta current_meta(std::size_t threads, bool show_ideal);

  /// CSV columns, in order.
  inline constexpr char const* kCsvHeader =
    "dataset,method,window,dims,skip_pct,speedup,ideal_speedup,dtw_computed,dtw_skipped,lb_time_s,dtw_time_s,total_time_s,seed";

  std::string emit_report(std::span<RunReport const> reports, EmitFormat format, RunMeta const& meta = {});

  /// Parses CSV produced by emit_report. Only the CSV columns are filled. Throws ParseError.
  std::vector<RunReport> parse_csv_report(std::string_view text);

  struct VerifyResult {
    std::size_t pairs = 0;
    std::size_t checks = 0;
    std::size_t violations = 0;
    std::vector<std::string> messages;
  };

  /// Checks every bound and variant against exact DTW on up to `max_pairs` seeded random pairs of the
  /// dataset, with the window and clustering parameters of `params`.
  VerifyResult verify_soundness(Dataset const& ds, SearchParams const& params, std::size_t max_pairs,
                                std::uint64_t seed);

} // namespace tcdtw
