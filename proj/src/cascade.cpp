#include "tcdtw/cascade.hpp"

#include "tcdtw/dtw.hpp"
#include "tcdtw/lb_ti.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <thread>

namespace tcdtw {

  namespace {

    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0) {
      return std::chrono::duration<double>(Clock::now() - t0).count();
    }

  } // namespace

  SearchCounters& SearchCounters::operator+=(SearchCounters const& o) noexcept {
    dtw_computed += o.dtw_computed;
    dtw_skipped += o.dtw_skipped;
    lb_mv_evals += o.lb_mv_evals;
    advanced_lb_evals += o.advanced_lb_evals;
    abandon_count += o.abandon_count;
    work += o.work;
    return *this;
  }

  SearchTimers& SearchTimers::operator+=(SearchTimers const& o) noexcept {
    lb_time += o.lb_time;
    dtw_time += o.dtw_time;
    total_time += o.total_time;
    return *this;
  }

  CandidateSet::CandidateSet(std::span<Series const> series) : series_(series) {
    if (series_.empty()) { throw InvalidInput("candidate list is empty"); }
    steps_.reserve(series_.size());
    for (auto const& s : series_) {
      require_same_shape(series_.front(), s);
      steps_.push_back(step_distances(s));
    }
  }

  Method advanced_bound(SearchParams const& params) {
    switch (params.method) {
      case Method::None:
      case Method::LbMv: return Method::None;
      case Method::LbTi:
      case Method::LbPc:
      case Method::LbAd: return params.method;
      case Method::TcDtw:
        if (!params.tc_choice) { throw InvalidInput("tc_dtw requires a selected bound (run tc_dtw_select or tune_params)"); }
        return *params.tc_choice;
    }
    return Method::None;
  }

  QueryPlan prepare_query(Series const& query, SearchParams const& params, std::span<double const> value_range) {
    QueryPlan plan;
    if (params.method == Method::None) { return plan; }
    std::size_t const n = query.length();
    std::size_t const dims = query.dims();
    plan.envelope = build_envelope(query, params.window);
    plan.work += 2 * n * dims;
    Method const adv = advanced_bound(params);
    if (adv == Method::LbTi) {
      plan.steps = step_distances(query);
      plan.work += n * dims;
    } else if (adv == Method::LbPc) {
      ClusterParams cp{params.quant_levels, params.max_clusters, params.expansion, params.min_cell_frac};
      plan.boxes = build_box_sets(query, params.window, cp, value_range);
      for (auto const& g : plan.boxes.groups) { plan.work += 2 * (g.last - g.first + 1) * dims; }
    }
    return plan;
  }

  NnOutcome nn_search(Series const& query, CandidateSet const& candidates, SearchParams const& params,
                      std::span<double const> value_range) {
    params.validate();
    require_same_shape(query, candidates[0]);
    auto const start = Clock::now();

    NnOutcome out;
    SearchCounters& cnt = out.counters;
    SearchTimers& tm = out.timers;
    std::size_t const dims = query.dims();
    Method const adv = advanced_bound(params);
    double const trigger = adv == Method::LbTi ? params.e_ti : adv == Method::LbPc ? params.e_pc : 0.0;

    QueryPlan plan;
    if (params.method != Method::None) {
      auto const t = Clock::now();
      plan = prepare_query(query, params, value_range);
      tm.lb_time += seconds_since(t);
    }
    cnt.work += plan.work;

    auto run_dtw = [&](Series const& c, double abandon_above) {
      auto const t0 = Clock::now();
      DtwResult const r = dtw_banded(query, c, params.window, abandon_above);
      tm.dtw_time += seconds_since(t0);
      ++cnt.dtw_computed;
      cnt.work += r.cells_computed * dims;
      return r;
    };

    out.best_index = 0;
    out.best_distance = run_dtw(candidates[0], kInfinity).distance;

    for (std::size_t k = 1; k < candidates.size(); ++k) {
      Series const& c = candidates[k];
      double const best = out.best_distance;
      if (params.method != Method::None) {
        auto const t0 = Clock::now();
        BoundResult const mv = lb_mv(c, plan.envelope, best);
        ++cnt.lb_mv_evals;
        cnt.work += mv.ops;
        bool skip = mv.abandoned || mv.value >= best;
        if (!skip && adv != Method::None && (adv == Method::LbAd || mv.value / best > trigger)) {
          BoundResult b;
          if (adv == Method::LbTi) {
            b = lb_ti(query, c, params.window, params.ti_variant, params.period,
                      NeighborDistances{plan.steps, candidates.steps(k)}, best);
          } else if (adv == Method::LbPc) {
            b = lb_pc(c, plan.boxes, best);
          } else {
            b = lb_ad(query, c, params.window, best);
          }
          ++cnt.advanced_lb_evals;
          cnt.work += b.ops;
          skip = b.abandoned || b.value >= best;
        }
        tm.lb_time += seconds_since(t0);
        if (skip) {
          ++cnt.dtw_skipped;
          continue;
        }
      }
      DtwResult const r = run_dtw(c, best);
      if (r.abandoned) {
        ++cnt.abandon_count;
      } else if (r.distance < best) {
        out.best_distance = r.distance;
        out.best_index = k;
      }
    }

    tm.total_time = seconds_since(start);
    return out;
  }

  BatchOutcome search_all(std::span<Series const> queries, CandidateSet const& candidates,
                          SearchParams const& params, std::span<double const> value_range, std::size_t threads) {
    BatchOutcome batch;
    batch.per_query.resize(queries.size());
    if (threads == 0) { threads = std::max(1u, std::thread::hardware_concurrency()); }
    threads = std::max<std::size_t>(1, std::min(threads, queries.size()));
    batch.threads = threads;

    auto const start = Clock::now();
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t i = next++; i < queries.size(); i = next++) {
        try {
          batch.per_query[i] = nn_search(queries[i], candidates, params, value_range);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) { failure = std::current_exception(); }
          next = queries.size();
        }
      }
    };
    if (threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      pool.reserve(threads);
      for (std::size_t t = 0; t < threads; ++t) { pool.emplace_back(worker); }
      for (auto& th : pool) { th.join(); }
    }
    if (failure) { std::rethrow_exception(failure); }
    batch.wall_time = seconds_since(start);

    for (auto const& o : batch.per_query) {
      batch.counters += o.counters;
      batch.timers += o.timers;
    }
    return batch;
  }

  TuningSample draw_sample(std::span<Series const> queries, std::span<Series const> candidates,
                           std::uint64_t seed, std::size_t size) {
    auto pick = [size](std::span<Series const> from, std::uint64_t s) {
      auto perm = seeded_permutation(from.size(), s);
      perm.resize(std::min(size, perm.size()));
      std::sort(perm.begin(), perm.end());
      std::vector<Series> out;
      out.reserve(perm.size());
      for (auto i : perm) { out.push_back(from[i]); }
      return out;
    };
    TuningSample sample;
    sample.queries = pick(queries, seed);
    sample.candidates = pick(candidates, seed ^ 0x9e3779b97f4a7c15ULL);
    return sample;
  }

  double sample_cost(TuningSample const& sample, SearchParams const& params, TuneMetric metric,
                     std::span<double const> value_range) {
    CandidateSet const cands(sample.candidates);
    BatchOutcome const b = search_all(sample.queries, cands, params, value_range, 1);
    return metric == TuneMetric::Work ? static_cast<double>(b.counters.work) : b.timers.total_time;
  }

  Selection tc_dtw_select(TuningSample const& sample, SearchParams const& params, TuneMetric metric,
                          std::span<double const> value_range) {
    Selection sel;
    SearchParams p = params;
    p.method = Method::LbTi;
    sel.ti_cost = sample_cost(sample, p, metric, value_range);
    p.method = Method::LbPc;
    sel.pc_cost = sample_cost(sample, p, metric, value_range);
    sel.choice = cheaper_bound(sel.ti_cost, sel.pc_cost);
    return sel;
  }

  TuneResult tune_params(TuningSample const& sample, SearchParams const& base, TuneGrids const& grids,
                         TuneMetric metric, std::span<double const> value_range) {
    if (grids.e_ti.empty() || grids.e_pc.empty() || grids.levels.empty()) {
      throw InvalidInput("tune_params: every grid needs at least one value");
    }
    TuneResult result;
    result.params = base;

    double best_ti = kInfinity;
    for (double e : grids.e_ti) {
      SearchParams p = base;
      p.method = Method::LbTi;
      p.e_ti = e;
      double const cost = sample_cost(sample, p, metric, value_range);
      ++result.runs;
      if (cost < best_ti) {
        best_ti = cost;
        result.params.e_ti = e;
      }
    }

    double best_pc = kInfinity;
    for (double e : grids.e_pc) {
      for (std::size_t levels : grids.levels) {
        SearchParams p = base;
        p.method = Method::LbPc;
        p.e_pc = e;
        p.quant_levels = levels;
        double const cost = sample_cost(sample, p, metric, value_range);
        ++result.runs;
        if (cost < best_pc) {
          best_pc = cost;
          result.params.e_pc = e;
          result.params.quant_levels = levels;
        }
      }
    }

    result.selection.ti_cost = best_ti;
    result.selection.pc_cost = best_pc;
    result.selection.choice = cheaper_bound(best_ti, best_pc);
    result.params.tc_choice = result.selection.choice;
    return result;
  }

} // namespace tcdtw
