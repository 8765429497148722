#include "tcdtw/bench.hpp"

#include "tcdtw/dtw.hpp"
#include "tcdtw/lb_mv.hpp"
#include "tcdtw/lb_pc.hpp"
#include "tcdtw/lb_ti.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>
#include <thread>
#include <unistd.h>

namespace tcdtw {

  void BenchConfig::validate() const {
    if (data.empty()) { throw ConfigError("no dataset given"); }
    for (auto const& p : data) {
      if (!std::filesystem::is_regular_file(p)) { throw ConfigError("dataset file not found: " + p.string()); }
    }
    if (methods.empty()) { throw ConfigError("no method given"); }
    if (windows.empty()) { throw ConfigError("no window size given"); }
    if (dims.empty()) { throw ConfigError("no dimension count given"); }
    for (auto const& d : dims) {
      if (d && *d == 0) { throw ConfigError("dimension count must be >= 1"); }
    }
    if (reps == 0) { throw ConfigError("repetitions must be >= 1"); }
    if (!(query_frac > 0.0 && query_frac < 1.0)) { throw ConfigError("query fraction must lie in (0,1)"); }
    if (grids.e_ti.empty() || grids.e_pc.empty() || grids.levels.empty()) { throw ConfigError("empty tuning grid"); }
    try {
      base.validate();
    } catch (InvalidInput const& e) {
      throw ConfigError(e.what());
    }
  }

  namespace {

    struct Measured {
      SearchCounters counters;
      double wall = 0.0;
      double lb = 0.0;
      double dtw = 0.0;
      double busy = 0.0; // summed per-query total time
      std::size_t threads = 1;
      std::vector<std::size_t> nn_index;
      std::vector<double> nn_distance;
    };

    Measured measure(std::span<Series const> queries, CandidateSet const& cands, SearchParams const& params,
                     std::span<double const> range, BenchConfig const& config) {
      Measured m;
      for (std::size_t rep = 0; rep < config.reps; ++rep) {
        BatchOutcome const b = search_all(queries, cands, params, range, config.threads);
        if (rep == 0) {
          m.counters = b.counters;
          m.threads = b.threads;
          for (auto const& o : b.per_query) {
            m.nn_index.push_back(o.best_index);
            m.nn_distance.push_back(o.best_distance);
          }
        }
        m.wall += b.wall_time;
        m.lb += b.timers.lb_time;
        m.dtw += b.timers.dtw_time;
        m.busy += b.timers.total_time;
      }
      double const reps = static_cast<double>(config.reps);
      m.wall /= reps;
      m.lb /= reps;
      m.dtw /= reps;
      m.busy /= reps;
      return m;
    }

    double ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

    bool needs_setup(Method m) { return m == Method::LbTi || m == Method::LbPc || m == Method::TcDtw; }

    std::string fixed(double v, int digits) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.*f", digits, v);
      return buf;
    }

    std::string csv_escape(std::string const& s) {
      if (s.find_first_of(",\"\n") == std::string::npos) { return s; }
      std::string out = "\"";
      for (char ch : s) {
        if (ch == '"') { out += '"'; }
        out += ch;
      }
      return out + "\"";
    }

    /// Formatted CSV fields of one row, in header order.
    std::vector<std::string> csv_fields(RunReport const& r) {
      return {
        r.dataset,
        std::string(to_string(r.method)),
        std::to_string(r.window),
        std::to_string(r.dims),
        fixed(r.skip_pct, 4),
        fixed(r.speedup, 4),
        fixed(r.ideal_speedup, 4),
        std::to_string(r.dtw_computed),
        std::to_string(r.dtw_skipped),
        fixed(r.lb_time_s, 6),
        fixed(r.dtw_time_s, 6),
        fixed(r.total_time_s, 6),
        std::to_string(r.seed),
      };
    }

    std::vector<std::string> split_csv_line(std::string_view line, std::size_t line_no) {
      std::vector<std::string> out;
      std::string cur;
      bool quoted = false;
      for (std::size_t i = 0; i < line.size(); ++i) {
        char const ch = line[i];
        if (quoted) {
          if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
            cur += '"';
            ++i;
          } else if (ch == '"') {
            quoted = false;
          } else {
            cur += ch;
          }
        } else if (ch == '"') {
          quoted = true;
        } else if (ch == ',') {
          out.push_back(std::move(cur));
          cur.clear();
        } else {
          cur += ch;
        }
      }
      if (quoted) { throw ParseError("unterminated quote", line_no); }
      out.push_back(std::move(cur));
      return out;
    }

  } // namespace

  std::vector<RunReport> run_benchmark(std::span<Dataset const> datasets, BenchConfig const& config) {
    std::vector<RunReport> reports;
    for (auto const& full : datasets) {
      full.validate();
      for (auto const& dims_opt : config.dims) {
        if (dims_opt && *dims_opt > full.dims) {
          throw ConfigError("dataset '" + full.name + "' has " + std::to_string(full.dims) + " dimensions, "
                            + std::to_string(*dims_opt) + " requested");
        }
        Dataset const ds = dims_opt ? truncate_dims(full, *dims_opt) : full;
        Split const sp = split(ds, config.query_frac, config.seed);
        CandidateSet const cands(sp.candidates);
        std::span<double const> const range = ds.value_range;

        for (std::size_t window : config.windows) {
          SearchParams params = config.base;
          params.window = window;
          if (std::ranges::any_of(config.methods, needs_setup)) {
            TuningSample const sample = draw_sample(sp.queries, sp.candidates, config.seed);
            if (config.tune) {
              params = tune_params(sample, params, config.grids, config.tune_metric, range).params;
            } else if (!params.tc_choice) {
              params.tc_choice = tc_dtw_select(sample, params, config.tune_metric, range).choice;
            }
          }

          SearchParams none = params;
          none.method = Method::None;
          Measured const baseline = measure(sp.queries, cands, none, range, config);

          for (Method method : config.methods) {
            SearchParams p = params;
            p.method = method;
            Measured const m = method == Method::None ? baseline : measure(sp.queries, cands, p, range, config);
            RunReport r;
            r.dataset = ds.name;
            r.method = method;
            r.window = window;
            r.dims = ds.dims;
            r.dtw_computed = m.counters.dtw_computed;
            r.dtw_skipped = m.counters.dtw_skipped;
            std::uint64_t const pairs = r.dtw_computed + r.dtw_skipped;
            r.skip_pct = pairs == 0 ? 0.0 : 100.0 * static_cast<double>(r.dtw_skipped) / static_cast<double>(pairs);
            if (method == Method::None) {
              r.speedup = 1.0;
              r.ideal_speedup = 1.0;
            } else {
              r.speedup = ratio(baseline.wall, m.wall);
              r.ideal_speedup = ratio(baseline.busy, m.busy - m.lb);
            }
            r.lb_time_s = m.lb;
            r.dtw_time_s = m.dtw;
            r.total_time_s = m.wall;
            r.seed = config.seed;
            r.threads = m.threads;
            r.queries = sp.queries.size();
            r.candidates = sp.candidates.size();
            r.params = p;
            r.nn_index = m.nn_index;
            r.nn_distance = m.nn_distance;
            reports.push_back(std::move(r));
          }
        }
      }
    }
    return reports;
  }

  std::vector<RunReport> run_benchmark(BenchConfig const& config) {
    config.validate();
    std::vector<Dataset> datasets;
    datasets.reserve(config.data.size());
    for (auto const& path : config.data) { datasets.push_back(normalize(load_file(path, config.format))); }
    return run_benchmark(datasets, config);
  }

  std::optional<EmitFormat> parse_emit_format(std::string_view name) noexcept {
    if (name == "csv") { return EmitFormat::Csv; }
    if (name == "table") { return EmitFormat::Table; }
    if (name == "json") { return EmitFormat::Json; }
    return std::nullopt;
  }

  RunMeta current_meta(std::size_t threads, bool show_ideal) {
    RunMeta meta;
    meta.threads = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
    char host[256] = {};
    if (gethostname(host, sizeof host - 1) == 0) { meta.host = host; }
    meta.show_ideal = show_ideal;
    return meta;
  }

  std::string emit_report(std::span<RunReport const> reports, EmitFormat format, RunMeta const& meta) {
    std::ostringstream out;
    switch (format) {
      case EmitFormat::Csv: {
        out << kCsvHeader << '\n';
        for (auto const& r : reports) {
          auto fields = csv_fields(r);
          fields[0] = csv_escape(fields[0]);
          for (std::size_t k = 0; k < fields.size(); ++k) { out << (k ? "," : "") << fields[k]; }
          out << '\n';
        }
        break;
      }
      case EmitFormat::Table: {
        out << "# threads=" << meta.threads << " host=" << (meta.host.empty() ? "unknown" : meta.host) << '\n';
        std::vector<std::string> header{"dataset", "method", "W", "dims", "skip%", "speedup"};
        if (meta.show_ideal) { header.emplace_back("ideal"); }
        header.insert(header.end(), {"dtw", "skipped", "lb_s", "dtw_s", "total_s"});
        std::vector<std::vector<std::string>> rows{header};
        for (auto const& r : reports) {
          auto f = csv_fields(r);
          std::vector<std::string> row{f[0], f[1], f[2], f[3], fixed(r.skip_pct, 2), fixed(r.speedup, 2)};
          if (meta.show_ideal) { row.push_back(fixed(r.ideal_speedup, 2)); }
          row.insert(row.end(), {f[7], f[8], f[9], f[10], f[11]});
          rows.push_back(std::move(row));
        }
        std::vector<std::size_t> width(header.size(), 0);
        for (auto const& row : rows) {
          for (std::size_t k = 0; k < row.size(); ++k) { width[k] = std::max(width[k], row[k].size()); }
        }
        for (auto const& row : rows) {
          for (std::size_t k = 0; k < row.size(); ++k) {
            if (k) { out << "  "; }
            // Text columns left-aligned, numbers right-aligned.
            if (k < 2) {
              out << row[k] << std::string(width[k] - row[k].size(), ' ');
            } else {
              out << std::string(width[k] - row[k].size(), ' ') << row[k];
            }
          }
          out << '\n';
        }
        break;
      }
      case EmitFormat::Json: {
        nlohmann::json doc;
        doc["meta"] = {{"threads", meta.threads}, {"host", meta.host}};
        doc["rows"] = nlohmann::json::array();
        for (auto const& r : reports) {
          auto const f = csv_fields(r);
          nlohmann::json row;
          row["dataset"] = r.dataset;
          row["method"] = f[1];
          row["window"] = r.window;
          row["dims"] = r.dims;
          row["skip_pct"] = std::stod(f[4]);
          row["speedup"] = std::stod(f[5]);
          row["ideal_speedup"] = std::stod(f[6]);
          row["dtw_computed"] = r.dtw_computed;
          row["dtw_skipped"] = r.dtw_skipped;
          row["lb_time_s"] = std::stod(f[9]);
          row["dtw_time_s"] = std::stod(f[10]);
          row["total_time_s"] = std::stod(f[11]);
          row["seed"] = r.seed;
          row["threads"] = r.threads;
          row["queries"] = r.queries;
          row["candidates"] = r.candidates;
          row["params"] = {
            {"P", r.params.period},       {"e_ti", r.params.e_ti},         {"e_pc", r.params.e_pc},
            {"L", r.params.quant_levels}, {"K", r.params.max_clusters},    {"w", r.params.expansion},
            {"min_cell_frac", r.params.min_cell_frac},
            {"tc_choice", r.params.tc_choice ? std::string(to_string(*r.params.tc_choice)) : std::string()},
          };
          doc["rows"].push_back(std::move(row));
        }
        out << doc.dump(2) << '\n';
        break;
      }
    }
    return out.str();
  }

  std::vector<RunReport> parse_csv_report(std::string_view text) {
    std::vector<RunReport> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') { line.pop_back(); }
      if (line.empty()) { continue; }
      if (!header) {
        if (line != kCsvHeader) { throw ParseError("unexpected CSV header", line_no); }
        header = true;
        continue;
      }
      auto const f = split_csv_line(line, line_no);
      if (f.size() != 13) { throw ParseError("expected 13 CSV fields, found " + std::to_string(f.size()), line_no); }
      try {
        RunReport r;
        r.dataset = f[0];
        auto const m = parse_method(f[1]);
        if (!m) { throw ParseError("unknown method '" + f[1] + "'", line_no); }
        r.method = *m;
        r.window = std::stoull(f[2]);
        r.dims = std::stoull(f[3]);
        r.skip_pct = std::stod(f[4]);
        r.speedup = std::stod(f[5]);
        r.ideal_speedup = std::stod(f[6]);
        r.dtw_computed = std::stoull(f[7]);
        r.dtw_skipped = std::stoull(f[8]);
        r.lb_time_s = std::stod(f[9]);
        r.dtw_time_s = std::stod(f[10]);
        r.total_time_s = std::stod(f[11]);
        r.seed = std::stoull(f[12]);
        out.push_back(std::move(r));
      } catch (std::logic_error const&) {
        throw ParseError("malformed CSV field", line_no);
      }
    }
    if (!header) { throw ParseError("missing CSV header", line_no); }
    return out;
  }

  VerifyResult verify_soundness(Dataset const& ds, SearchParams const& params, std::size_t max_pairs,
                                std::uint64_t seed) {
    ds.validate();
    VerifyResult res;
    std::size_t const count = ds.series.size();
    if (count == 0) { return res; }
    std::mt19937_64 rng(seed);
    std::size_t const n = ds.length;
    std::size_t const w = params.effective_window(n);

    std::vector<std::size_t> periods{1, 2, params.period, n};
    std::vector<ClusterParams> clusterings{
      {params.quant_levels, params.max_clusters, params.expansion, params.min_cell_frac},
      {params.quant_levels, params.max_clusters, 1, params.min_cell_frac},
    };

    for (std::size_t k = 0; k < max_pairs; ++k) {
      std::size_t const a = rng() % count;
      std::size_t b = rng() % count;
      if (count > 1 && a == b) { b = (b + 1) % count; }
      Series const& q = ds.series[a];
      Series const& c = ds.series[b];
      double const exact = dtw_banded(q, c, w).distance;
      ++res.pairs;

      auto check = [&](std::string const& what, double bound) {
        ++res.checks;
        if (bound > exact) {
          ++res.violations;
          char buf[64];
          std::snprintf(buf, sizeof buf, " %.17g > dtw %.17g", bound, exact);
          res.messages.push_back("series " + std::to_string(a) + " vs " + std::to_string(b) + ": " + what + buf);
        }
      };

      check("lb_mv", lb_mv(c, build_envelope(q, w)).value);
      check("lb_ad", lb_ad(q, c, w).value);
      auto const qs = step_distances(q);
      auto const cs = step_distances(c);
      for (auto variant : {TiVariant::Basic, TiVariant::Top, TiVariant::Tip, TiVariant::TipTop}) {
        for (std::size_t period : periods) {
          check("lb_ti/" + std::string(to_string(variant)) + "/P=" + std::to_string(period),
                lb_ti(q, c, w, variant, period, NeighborDistances{qs, cs}).value);
        }
      }
      for (auto const& cp : clusterings) {
        check("lb_pc/w=" + std::to_string(cp.expansion), lb_pc(c, build_box_sets(q, w, cp, ds.value_range)).value);
      }
    }
    return res;
  }

} // namespace tcdtw
