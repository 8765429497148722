#pragma once

#include "tcdtw/core.hpp"
#include "tcdtw/lb_mv.hpp"
#include "tcdtw/lb_pc.hpp"

#include <cstdint>
#include <vector>

namespace tcdtw {

  struct SearchCounters {
    std::uint64_t dtw_computed = 0;
    std::uint64_t dtw_skipped = 0;
    std::uint64_t lb_mv_evals = 0;
    std::uint64_t advanced_lb_evals = 0;
    /// DTW computations stopped early against the best-so-far.
    std::uint64_t abandon_count = 0;
    /// Scalar operations spent on bounds, query preparation and DTW cells.
    std::uint64_t work = 0;

    SearchCounters& operator+=(SearchCounters const& o) noexcept;
    friend bool operator==(SearchCounters const&, SearchCounters const&) = default;
  };

  /// Seconds. lb_time covers query preparation and every bound call.
  struct SearchTimers {
    double lb_time = 0.0;
    double dtw_time = 0.0;
    double total_time = 0.0;

    SearchTimers& operator+=(SearchTimers const& o) noexcept;
  };

  struct NnOutcome {
    std::size_t best_index = 0;
    double best_distance = 0.0;
    SearchCounters counters;
    SearchTimers timers;
  };

  /// Candidates of a search with their adjacent-point distances. Does not own the series.
  class CandidateSet {
  public:
    /// Throws InvalidInput if empty or if shapes differ.
    explicit CandidateSet(std::span<Series const> series);

    [[nodiscard]] std::size_t size() const noexcept { return series_.size(); }
    [[nodiscard]] Series const& operator[](std::size_t i) const noexcept { return series_[i]; }
    [[nodiscard]] std::span<double const> steps(std::size_t i) const noexcept { return steps_[i]; }
    [[nodiscard]] std::span<Series const> series() const noexcept { return series_; }

  private:
    std::span<Series const> series_;
    std::vector<std::vector<double>> steps_;
  };

  /// Per-query state shared by every candidate: envelope, step distances, and box sets.
  struct QueryPlan {
    Envelope envelope;
    std::vector<double> steps;
    BoxSets boxes;
    std::uint64_t work = 0;
  };

  /// The bound applied after LB_MV for a method, or None. TcDtw resolves through params.tc_choice.
  /// Throws InvalidInput for TcDtw without a choice.
  Method advanced_bound(SearchParams const& params);

  QueryPlan prepare_query(Series const& query, SearchParams const& params, std::span<double const> value_range = {});

  /// Nearest neighbour of `query` among `candidates` under dtw_banded(params.window).
  ///
  /// Candidates are visited in order. The best-so-far starts as the exact distance to candidate 0.
  /// Every later candidate goes through LB_MV, then (when the method has one and the LB_MV ratio to
  /// the best-so-far lies in (e, 1)) the advanced bound, and only then the early-abandoning DTW.
  /// A candidate replaces the best only on strict improvement.
  ///
  /// Throws InvalidInput on shape mismatch or unresolved TC-DTW.
  NnOutcome nn_search(Series const& query, CandidateSet const& candidates, SearchParams const& params,
                      std::span<double const> value_range = {});

  struct BatchOutcome {
    std::vector<NnOutcome> per_query;
    SearchCounters counters;
    /// Sums of the per-query timers.
    SearchTimers timers;
    /// Whole-batch wall clock.
    double wall_time = 0.0;
    std::size_t threads = 1;
  };

  /// nn_search for every query, distributed over `threads` workers (0: hardware concurrency).
  BatchOutcome search_all(std::span<Series const> queries, CandidateSet const& candidates,
                          SearchParams const& params, std::span<double const> value_range = {},
                          std::size_t threads = 1);

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Setup stage: method selection and parameter tuning on a sample
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// How sample runs are compared. Work is the deterministic operation count; WallTime is measured.
  enum class TuneMetric { Work, WallTime };

  constexpr std::size_t kDefaultSampleSize = 23;

  /// Sample used by the setup stage: seeded uniform draws of at most `size` queries and candidates,
  /// kept in their original order.
  struct TuningSample {
    std::vector<Series> queries;
    std::vector<Series> candidates;
  };

  TuningSample draw_sample(std::span<Series const> queries, std::span<Series const> candidates,
                           std::uint64_t seed, std::size_t size = kDefaultSampleSize);

  /// Cost of running `params` over the whole sample under `metric`.
  double sample_cost(TuningSample const& sample, SearchParams const& params, TuneMetric metric,
                     std::span<double const> value_range = {});

  struct Selection {
    Method choice = Method::LbPc;
    double ti_cost = 0.0;
    double pc_cost = 0.0;
  };

  /// LbTi only when strictly cheaper; ties go to LbPc.
  [[nodiscard]] constexpr Method cheaper_bound(double ti_cost, double pc_cost) noexcept {
    return ti_cost < pc_cost ? Method::LbTi : Method::LbPc;
  }

  /// Runs LB_TI and LB_PC on the sample and keeps the cheaper; ties go to LB_PC.
  Selection tc_dtw_select(TuningSample const& sample, SearchParams const& params, TuneMetric metric,
                          std::span<double const> value_range = {});

  struct TuneGrids {
    std::vector<double> e_ti{0.05, 0.1, 0.2};
    std::vector<double> e_pc{0.1, 0.5};
    std::vector<std::size_t> levels{2, 3};
  };

  struct TuneResult {
    /// Tuned e_ti, e_pc, quant_levels; tc_choice set to the cheaper of the two tuned bounds.
    SearchParams params;
    Selection selection;
    std::size_t runs = 0;
  };

  /// Grid search over e_ti (with LB_TI) and e_pc x levels (with LB_PC) on the sample, keeping the
  /// cheapest setting of each. Other parameters are taken from `base`. Throws InvalidInput on an empty grid.
  TuneResult tune_params(TuningSample const& sample, SearchParams const& base, TuneGrids const& grids,
                         TuneMetric metric, std::span<double const> value_range = {});

} // namespace tcdtw
