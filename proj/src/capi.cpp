#include "tcdtw/tcdtw.h"

#include "tcdtw/bench.hpp"
#include "tcdtw/cascade.hpp"
#include "tcdtw/dtw.hpp"
#include "tcdtw/ingest.hpp"
#include "tcdtw/lb_mv.hpp"
#include "tcdtw/lb_pc.hpp"
#include "tcdtw/lb_ti.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

struct tcdtw_dataset {
  tcdtw::Dataset ds;
};

struct tcdtw_bench_config {
  tcdtw::BenchConfig cfg;
  bool methods_set = false;
  bool windows_set = false;
  bool dims_set = false;
};

struct tcdtw_report {
  std::vector<tcdtw::RunReport> rows;
  std::size_t threads = 1;
};

namespace {

  thread_local std::string last_error;

  tcdtw_status fail(tcdtw_status status, std::string message) {
    last_error = std::move(message);
    return status;
  }

  /// Runs `fn`, translating exceptions into status codes.
  template<typename Fn>
  tcdtw_status guarded(Fn&& fn) noexcept {
    try {
      last_error.clear();
      fn();
      return TCDTW_OK;
    } catch (tcdtw::InvalidInput const& e) {
      return fail(TCDTW_ERR_INVALID_INPUT, e.what());
    } catch (tcdtw::ParseError const& e) {
      return fail(TCDTW_ERR_PARSE, e.what());
    } catch (tcdtw::ConfigError const& e) {
      return fail(TCDTW_ERR_CONFIG, e.what());
    } catch (std::bad_alloc const&) {
      return fail(TCDTW_ERR_INTERNAL, "out of memory");
    } catch (std::exception const& e) {
      return fail(TCDTW_ERR_INTERNAL, e.what());
    } catch (...) {
      return fail(TCDTW_ERR_INTERNAL, "unknown error");
    }
  }

  struct NullArgument {};

  template<typename... Ptrs>
  bool any_null(Ptrs const*... ptrs) {
    return ((ptrs == nullptr) || ...);
  }

  tcdtw::Method to_cpp(tcdtw_method m) {
    switch (m) {
      case TCDTW_METHOD_NONE: return tcdtw::Method::None;
      case TCDTW_METHOD_LB_MV: return tcdtw::Method::LbMv;
      case TCDTW_METHOD_LB_TI: return tcdtw::Method::LbTi;
      case TCDTW_METHOD_LB_PC: return tcdtw::Method::LbPc;
      case TCDTW_METHOD_TC_DTW: return tcdtw::Method::TcDtw;
      case TCDTW_METHOD_LB_AD: return tcdtw::Method::LbAd;
    }
    throw tcdtw::InvalidInput("unknown method code " + std::to_string(static_cast<int>(m)));
  }

  tcdtw_method to_c(tcdtw::Method m) {
    switch (m) {
      case tcdtw::Method::None: return TCDTW_METHOD_NONE;
      case tcdtw::Method::LbMv: return TCDTW_METHOD_LB_MV;
      case tcdtw::Method::LbTi: return TCDTW_METHOD_LB_TI;
      case tcdtw::Method::LbPc: return TCDTW_METHOD_LB_PC;
      case tcdtw::Method::TcDtw: return TCDTW_METHOD_TC_DTW;
      case tcdtw::Method::LbAd: return TCDTW_METHOD_LB_AD;
    }
    return TCDTW_METHOD_NONE;
  }

  tcdtw::TiVariant to_cpp(tcdtw_ti_variant v) {
    switch (v) {
      case TCDTW_TI_BASIC: return tcdtw::TiVariant::Basic;
      case TCDTW_TI_TOP: return tcdtw::TiVariant::Top;
      case TCDTW_TI_TIP: return tcdtw::TiVariant::Tip;
      case TCDTW_TI_TIP_TOP: return tcdtw::TiVariant::TipTop;
    }
    throw tcdtw::InvalidInput("unknown triangle variant code " + std::to_string(static_cast<int>(v)));
  }

  tcdtw_ti_variant to_c(tcdtw::TiVariant v) {
    switch (v) {
      case tcdtw::TiVariant::Basic: return TCDTW_TI_BASIC;
      case tcdtw::TiVariant::Top: return TCDTW_TI_TOP;
      case tcdtw::TiVariant::Tip: return TCDTW_TI_TIP;
      case tcdtw::TiVariant::TipTop: return TCDTW_TI_TIP_TOP;
    }
    return TCDTW_TI_TIP_TOP;
  }

  tcdtw::Format to_cpp(tcdtw_format f) {
    switch (f) {
      case TCDTW_FORMAT_NATIVE: return tcdtw::Format::Native;
      case TCDTW_FORMAT_TS: return tcdtw::Format::Ts;
    }
    throw tcdtw::InvalidInput("unknown format code");
  }

  tcdtw::TuneMetric to_cpp(tcdtw_tune_metric m) {
    return m == TCDTW_TUNE_WALL_TIME ? tcdtw::TuneMetric::WallTime : tcdtw::TuneMetric::Work;
  }

  tcdtw::SearchParams to_cpp(tcdtw_params const& p) {
    tcdtw::SearchParams out;
    out.window = p.window;
    out.method = to_cpp(p.method);
    out.period = p.period;
    out.ti_variant = to_cpp(p.ti_variant);
    out.e_ti = p.e_ti;
    out.e_pc = p.e_pc;
    out.quant_levels = p.quant_levels;
    out.max_clusters = p.max_clusters;
    out.expansion = p.expansion;
    out.min_cell_frac = p.min_cell_frac;
    if (p.tc_choice != TCDTW_METHOD_NONE) { out.tc_choice = to_cpp(p.tc_choice); }
    out.validate();
    return out;
  }

  tcdtw_params to_c(tcdtw::SearchParams const& p) {
    tcdtw_params out{};
    out.window = p.window;
    out.method = to_c(p.method);
    out.period = p.period;
    out.ti_variant = to_c(p.ti_variant);
    out.e_ti = p.e_ti;
    out.e_pc = p.e_pc;
    out.quant_levels = p.quant_levels;
    out.max_clusters = p.max_clusters;
    out.expansion = p.expansion;
    out.min_cell_frac = p.min_cell_frac;
    out.tc_choice = p.tc_choice ? to_c(*p.tc_choice) : TCDTW_METHOD_NONE;
    return out;
  }

  tcdtw::Series series_from(double const* values, std::size_t n, std::size_t d) {
    return tcdtw::Series(n, d, std::vector<double>(values, values + n * d));
  }

  tcdtw::TuningSample sample_of(tcdtw_dataset const* queries, tcdtw_dataset const* candidates, uint64_t seed) {
    return tcdtw::draw_sample(queries->ds.series, candidates->ds.series, seed);
  }

} // namespace

#define TCDTW_REQUIRE(...)                                                       \
  do {                                                                           \
    if (any_null(__VA_ARGS__)) { return fail(TCDTW_ERR_NULL_ARGUMENT, "null argument"); } \
  } while (0)

extern "C" {

const char* tcdtw_version(void) { return "1.0.0"; }

const char* tcdtw_last_error(void) { return last_error.c_str(); }

const char* tcdtw_method_name(tcdtw_method method) {
  switch (method) {
    case TCDTW_METHOD_NONE: return "none";
    case TCDTW_METHOD_LB_MV: return "lb_mv";
    case TCDTW_METHOD_LB_TI: return "lb_ti";
    case TCDTW_METHOD_LB_PC: return "lb_pc";
    case TCDTW_METHOD_TC_DTW: return "tc_dtw";
    case TCDTW_METHOD_LB_AD: return "lb_ad";
  }
  return "unknown";
}

tcdtw_status tcdtw_method_parse(const char* name, tcdtw_method* out) {
  TCDTW_REQUIRE(name, out);
  auto const m = tcdtw::parse_method(name);
  if (!m) { return fail(TCDTW_ERR_CONFIG, std::string("unknown method '") + name + "'"); }
  *out = to_c(*m);
  return TCDTW_OK;
}

void tcdtw_params_default(tcdtw_params* params) {
  if (params != nullptr) { *params = to_c(tcdtw::SearchParams{}); }
}

tcdtw_status tcdtw_point_distance(const double* a, const double* b, size_t d, double* out) {
  TCDTW_REQUIRE(a, b, out);
  return guarded([&] {
    if (d == 0) { throw tcdtw::InvalidInput("dimension must be >= 1"); }
    *out = tcdtw::point_distance(a, b, d);
  });
}

tcdtw_status tcdtw_dtw(const double* q, const double* c, size_t n, size_t d, size_t window, double abandon_above,
                       double* out_distance, int* out_abandoned) {
  TCDTW_REQUIRE(q, c, out_distance);
  return guarded([&] {
    auto const r = tcdtw::dtw_banded(series_from(q, n, d), series_from(c, n, d), window, abandon_above);
    *out_distance = r.distance;
    if (out_abandoned != nullptr) { *out_abandoned = r.abandoned ? 1 : 0; }
  });
}

tcdtw_status tcdtw_lower_bound(tcdtw_method method, const double* q, const double* c, size_t n, size_t d,
                               const tcdtw_params* params, double* out) {
  TCDTW_REQUIRE(q, c, params, out);
  return guarded([&] {
    auto const p = to_cpp(*params);
    auto const qs = series_from(q, n, d);
    auto const cs = series_from(c, n, d);
    switch (to_cpp(method)) {
      case tcdtw::Method::LbMv: *out = tcdtw::lb_mv(cs, tcdtw::build_envelope(qs, p.window)).value; break;
      case tcdtw::Method::LbAd: *out = tcdtw::lb_ad(qs, cs, p.window).value; break;
      case tcdtw::Method::LbTi: {
        auto const a = tcdtw::step_distances(qs);
        auto const b = tcdtw::step_distances(cs);
        *out = tcdtw::lb_ti(qs, cs, p.window, p.ti_variant, p.period, tcdtw::NeighborDistances{a, b}).value;
        break;
      }
      case tcdtw::Method::LbPc: {
        tcdtw::ClusterParams cp{p.quant_levels, p.max_clusters, p.expansion, p.min_cell_frac};
        *out = tcdtw::lb_pc(cs, tcdtw::build_box_sets(qs, p.window, cp)).value;
        break;
      }
      default: throw tcdtw::InvalidInput("tcdtw_lower_bound: method must be lb_mv, lb_ad, lb_ti or lb_pc");
    }
  });
}

tcdtw_status tcdtw_dataset_load(const char* path, tcdtw_format format, tcdtw_dataset** out) {
  TCDTW_REQUIRE(path, out);
  return guarded([&] {
    auto raw = tcdtw::load_file(path, to_cpp(format));
    *out = new tcdtw_dataset{tcdtw::finalize(std::move(raw))};
  });
}

tcdtw_status tcdtw_dataset_from_values(const char* name, const double* values, size_t count, size_t n, size_t d,
                                       tcdtw_dataset** out) {
  TCDTW_REQUIRE(values, out);
  return guarded([&] {
    if (count == 0) { throw tcdtw::InvalidInput("dataset needs at least one series"); }
    tcdtw::Dataset ds;
    ds.name = name != nullptr ? name : "dataset";
    ds.length = n;
    ds.dims = d;
    for (std::size_t s = 0; s < count; ++s) { ds.series.push_back(series_from(values + s * n * d, n, d)); }
    *out = new tcdtw_dataset{std::move(ds)};
  });
}

void tcdtw_dataset_free(tcdtw_dataset* ds) { delete ds; }

tcdtw_status tcdtw_dataset_shape(const tcdtw_dataset* ds, size_t* count, size_t* n, size_t* d) {
  TCDTW_REQUIRE(ds);
  if (count != nullptr) { *count = ds->ds.series.size(); }
  if (n != nullptr) { *n = ds->ds.length; }
  if (d != nullptr) { *d = ds->ds.dims; }
  return TCDTW_OK;
}

tcdtw_status tcdtw_dataset_series(const tcdtw_dataset* ds, size_t index, const double** values) {
  TCDTW_REQUIRE(ds, values);
  if (index >= ds->ds.series.size()) { return fail(TCDTW_ERR_INVALID_INPUT, "series index out of range"); }
  *values = ds->ds.series[index].data();
  return TCDTW_OK;
}

tcdtw_status tcdtw_dataset_normalize(tcdtw_dataset* ds) {
  TCDTW_REQUIRE(ds);
  return guarded([&] { ds->ds = tcdtw::normalize(std::move(ds->ds)); });
}

tcdtw_status tcdtw_dataset_truncate_dims(tcdtw_dataset* ds, size_t dims_used) {
  TCDTW_REQUIRE(ds);
  return guarded([&] { ds->ds = tcdtw::truncate_dims(ds->ds, dims_used); });
}

tcdtw_status tcdtw_dataset_write_native(const tcdtw_dataset* ds, const char* path) {
  TCDTW_REQUIRE(ds, path);
  return guarded([&] { tcdtw::write_native_file(ds->ds, path); });
}

tcdtw_status tcdtw_dataset_split(const tcdtw_dataset* ds, double query_frac, uint64_t seed, tcdtw_dataset** queries,
                                 tcdtw_dataset** candidates) {
  TCDTW_REQUIRE(ds, queries, candidates);
  return guarded([&] {
    auto sp = tcdtw::split(ds->ds, query_frac, seed);
    auto make = [&](std::vector<tcdtw::Series> series) {
      tcdtw::Dataset out;
      out.name = ds->ds.name;
      out.length = ds->ds.length;
      out.dims = ds->ds.dims;
      out.normalized = ds->ds.normalized;
      out.value_range = ds->ds.value_range;
      out.series = std::move(series);
      return new tcdtw_dataset{std::move(out)};
    };
    auto* q = make(std::move(sp.queries));
    auto* c = make(std::move(sp.candidates));
    *queries = q;
    *candidates = c;
  });
}

tcdtw_status tcdtw_search(const tcdtw_dataset* queries, const tcdtw_dataset* candidates, const tcdtw_params* params,
                          size_t threads, tcdtw_nn_result* results, size_t results_len) {
  TCDTW_REQUIRE(queries, candidates, params, results);
  return guarded([&] {
    if (results_len < queries->ds.series.size()) { throw tcdtw::InvalidInput("results buffer is too small"); }
    auto const p = to_cpp(*params);
    tcdtw::CandidateSet const cands(candidates->ds.series);
    auto const batch = tcdtw::search_all(queries->ds.series, cands, p, candidates->ds.value_range, threads);
    for (std::size_t i = 0; i < batch.per_query.size(); ++i) {
      auto const& o = batch.per_query[i];
      results[i] = tcdtw_nn_result{o.best_index,           o.best_distance,         o.counters.dtw_computed,
                                   o.counters.dtw_skipped, o.counters.lb_mv_evals,  o.counters.advanced_lb_evals,
                                   o.counters.abandon_count, o.counters.work,       o.timers.lb_time,
                                   o.timers.dtw_time,      o.timers.total_time};
    }
  });
}

tcdtw_status tcdtw_tune(const tcdtw_dataset* queries, const tcdtw_dataset* candidates, uint64_t seed,
                        tcdtw_tune_metric metric, tcdtw_params* params) {
  TCDTW_REQUIRE(queries, candidates, params);
  return guarded([&] {
    auto const sample = sample_of(queries, candidates, seed);
    auto const r = tcdtw::tune_params(sample, to_cpp(*params), tcdtw::TuneGrids{}, to_cpp(metric),
                                      candidates->ds.value_range);
    *params = to_c(r.params);
  });
}

tcdtw_status tcdtw_select(const tcdtw_dataset* queries, const tcdtw_dataset* candidates, uint64_t seed,
                          tcdtw_tune_metric metric, tcdtw_params* params) {
  TCDTW_REQUIRE(queries, candidates, params);
  return guarded([&] {
    auto const sample = sample_of(queries, candidates, seed);
    auto p = to_cpp(*params);
    p.tc_choice = tcdtw::tc_dtw_select(sample, p, to_cpp(metric), candidates->ds.value_range).choice;
    *params = to_c(p);
  });
}

tcdtw_status tcdtw_verify(const tcdtw_dataset* ds, const tcdtw_params* params, size_t max_pairs, uint64_t seed,
                          tcdtw_verify_result* out) {
  TCDTW_REQUIRE(ds, params, out);
  return guarded([&] {
    auto const r = tcdtw::verify_soundness(ds->ds, to_cpp(*params), max_pairs, seed);
    *out = tcdtw_verify_result{r.pairs, r.checks, r.violations};
    if (!r.messages.empty()) { last_error = r.messages.front(); }
  });
}

tcdtw_status tcdtw_bench_config_new(tcdtw_bench_config** out) {
  TCDTW_REQUIRE(out);
  return guarded([&] { *out = new tcdtw_bench_config{}; });
}

void tcdtw_bench_config_free(tcdtw_bench_config* cfg) { delete cfg; }

tcdtw_status tcdtw_bench_config_add_data(tcdtw_bench_config* cfg, const char* path) {
  TCDTW_REQUIRE(cfg, path);
  return guarded([&] { cfg->cfg.data.emplace_back(path); });
}

tcdtw_status tcdtw_bench_config_set_format(tcdtw_bench_config* cfg, tcdtw_format format) {
  TCDTW_REQUIRE(cfg);
  return guarded([&] { cfg->cfg.format = to_cpp(format); });
}

tcdtw_status tcdtw_bench_config_add_method(tcdtw_bench_config* cfg, tcdtw_method method) {
  TCDTW_REQUIRE(cfg);
  return guarded([&] {
    auto const m = to_cpp(method);
    if (!cfg->methods_set) {
      cfg->cfg.methods.clear();
      cfg->methods_set = true;
    }
    cfg->cfg.methods.push_back(m);
  });
}

tcdtw_status tcdtw_bench_config_add_window(tcdtw_bench_config* cfg, size_t window) {
  TCDTW_REQUIRE(cfg);
  return guarded([&] {
    if (!cfg->windows_set) {
      cfg->cfg.windows.clear();
      cfg->windows_set = true;
    }
    cfg->cfg.windows.push_back(window);
  });
}

tcdtw_status tcdtw_bench_config_add_dims(tcdtw_bench_config* cfg, size_t dims) {
  TCDTW_REQUIRE(cfg);
  return guarded([&] {
    if (!cfg->dims_set) {
      cfg->cfg.dims.clear();
      cfg->dims_set = true;
    }
    cfg->cfg.dims.push_back(dims == 0 ? std::nullopt : std::optional<std::size_t>(dims));
  });
}

tcdtw_status tcdtw_bench_config_set_seed(tcdtw_bench_config* cfg, uint64_t seed) {
  TCDTW_REQUIRE(cfg);
  cfg->cfg.seed = seed;
  return TCDTW_OK;
}

tcdtw_status tcdtw_bench_config_set_reps(tcdtw_bench_config* cfg, size_t reps) {
  TCDTW_REQUIRE(cfg);
  cfg->cfg.reps = reps;
  return TCDTW_OK;
}

tcdtw_status tcdtw_bench_config_set_tune(tcdtw_bench_config* cfg, int tune, tcdtw_tune_metric metric) {
  TCDTW_REQUIRE(cfg);
  cfg->cfg.tune = tune != 0;
  cfg->cfg.tune_metric = to_cpp(metric);
  return TCDTW_OK;
}

tcdtw_status tcdtw_bench_config_set_threads(tcdtw_bench_config* cfg, size_t threads) {
  TCDTW_REQUIRE(cfg);
  cfg->cfg.threads = threads;
  return TCDTW_OK;
}

tcdtw_status tcdtw_bench_config_set_query_frac(tcdtw_bench_config* cfg, double frac) {
  TCDTW_REQUIRE(cfg);
  cfg->cfg.query_frac = frac;
  return TCDTW_OK;
}

tcdtw_status tcdtw_bench_config_set_params(tcdtw_bench_config* cfg, const tcdtw_params* base) {
  TCDTW_REQUIRE(cfg, base);
  tcdtw_status const st = guarded([&] { cfg->cfg.base = to_cpp(*base); });
  return st == TCDTW_ERR_INVALID_INPUT ? fail(TCDTW_ERR_CONFIG, last_error) : st;
}

tcdtw_status tcdtw_bench_run(const tcdtw_bench_config* cfg, tcdtw_report** out) {
  TCDTW_REQUIRE(cfg, out);
  return guarded([&] {
    auto rows = tcdtw::run_benchmark(cfg->cfg);
    auto* report = new tcdtw_report{std::move(rows), tcdtw::current_meta(cfg->cfg.threads, false).threads};
    *out = report;
  });
}

void tcdtw_report_free(tcdtw_report* report) { delete report; }

size_t tcdtw_report_size(const tcdtw_report* report) { return report == nullptr ? 0 : report->rows.size(); }

tcdtw_status tcdtw_report_row_at(const tcdtw_report* report, size_t index, tcdtw_report_row* out) {
  TCDTW_REQUIRE(report, out);
  if (index >= report->rows.size()) { return fail(TCDTW_ERR_INVALID_INPUT, "report row index out of range"); }
  auto const& r = report->rows[index];
  *out = tcdtw_report_row{r.dataset.c_str(), to_c(r.method), r.window,    r.dims,      r.skip_pct,
                          r.speedup,         r.ideal_speedup, r.dtw_computed, r.dtw_skipped, r.lb_time_s,
                          r.dtw_time_s,      r.total_time_s,  r.seed,      r.threads};
  return TCDTW_OK;
}

tcdtw_status tcdtw_report_emit(const tcdtw_report* report, tcdtw_emit format, int show_ideal, char** out) {
  TCDTW_REQUIRE(report, out);
  return guarded([&] {
    tcdtw::EmitFormat f = tcdtw::EmitFormat::Csv;
    switch (format) {
      case TCDTW_EMIT_CSV: f = tcdtw::EmitFormat::Csv; break;
      case TCDTW_EMIT_TABLE: f = tcdtw::EmitFormat::Table; break;
      case TCDTW_EMIT_JSON: f = tcdtw::EmitFormat::Json; break;
      default: throw tcdtw::InvalidInput("unknown emit format");
    }
    auto const text = tcdtw::emit_report(report->rows, f, tcdtw::current_meta(report->threads, show_ideal != 0));
    char* buf = static_cast<char*>(std::malloc(text.size() + 1));
    if (buf == nullptr) { throw std::bad_alloc(); }
    std::memcpy(buf, text.c_str(), text.size() + 1);
    *out = buf;
  });
}

void tcdtw_string_free(char* s) { std::free(s); }

} // extern "C"
