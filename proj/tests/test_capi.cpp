#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "tcdtw/tcdtw.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace {

  std::vector<double> walks(std::size_t count, std::size_t n, std::size_t d, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<double> v(count * n * d);
    for (std::size_t s = 0; s < count; ++s) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t p = 0; p < d; ++p) {
          std::size_t const k = (s * n + i) * d + p;
          v[k] = (i == 0 ? 0.0 : v[k - d]) + g(rng);
        }
      }
    }
    return v;
  }

} // namespace

TEST_CASE("names and defaults") {
  CHECK(std::string(tcdtw_version()).size() > 0);
  CHECK(std::string(tcdtw_method_name(TCDTW_METHOD_TC_DTW)) == "tc_dtw");
  tcdtw_method m{};
  CHECK(tcdtw_method_parse("lb_pc", &m) == TCDTW_OK);
  CHECK(m == TCDTW_METHOD_LB_PC);
  CHECK(tcdtw_method_parse("nope", &m) == TCDTW_ERR_CONFIG);
  CHECK(std::string(tcdtw_last_error()).find("nope") != std::string::npos);
  CHECK(tcdtw_method_parse(nullptr, &m) == TCDTW_ERR_NULL_ARGUMENT);

  tcdtw_params p;
  tcdtw_params_default(&p);
  CHECK(p.period == 5);
  CHECK(p.max_clusters == 6);
  CHECK(p.expansion == 6);
  CHECK(p.ti_variant == TCDTW_TI_TIP_TOP);
  CHECK(p.tc_choice == TCDTW_METHOD_NONE);
}

TEST_CASE("pairwise primitives") {
  double const a[] = {0, 0};
  double const b[] = {3, 4};
  double d = 0;
  CHECK(tcdtw_point_distance(a, b, 2, &d) == TCDTW_OK);
  CHECK(d == 5.0);
  CHECK(tcdtw_point_distance(a, b, 0, &d) == TCDTW_ERR_INVALID_INPUT);

  double const q[] = {0, 0, 3, 4};
  double const c[] = {0, 0, 0, 0};
  int abandoned = -1;
  CHECK(tcdtw_dtw(q, c, 2, 2, 1, INFINITY, &d, &abandoned) == TCDTW_OK);
  CHECK(d == 5.0);
  CHECK(abandoned == 0);
  CHECK(tcdtw_dtw(q, c, 2, 2, 1, 4.0, &d, &abandoned) == TCDTW_OK);
  CHECK(abandoned == 1);

  double const q1[] = {1, 2, 3};
  double const c1[] = {5, 5, 5};
  tcdtw_params p;
  tcdtw_params_default(&p);
  p.window = 1;
  CHECK(tcdtw_lower_bound(TCDTW_METHOD_LB_MV, q1, c1, 3, 1, &p, &d) == TCDTW_OK);
  CHECK(d == 7.0);
  CHECK(tcdtw_lower_bound(TCDTW_METHOD_LB_AD, q1, c1, 3, 1, &p, &d) == TCDTW_OK);
  CHECK(d == 7.0);
  double dtw = 0;
  CHECK(tcdtw_dtw(q1, c1, 3, 1, 1, INFINITY, &dtw, nullptr) == TCDTW_OK);
  for (auto m : {TCDTW_METHOD_LB_TI, TCDTW_METHOD_LB_PC}) {
    CHECK(tcdtw_lower_bound(m, q1, c1, 3, 1, &p, &d) == TCDTW_OK);
    CHECK(d <= dtw);
  }
  CHECK(tcdtw_lower_bound(TCDTW_METHOD_NONE, q1, c1, 3, 1, &p, &d) == TCDTW_ERR_INVALID_INPUT);
  p.period = 0;
  CHECK(tcdtw_lower_bound(TCDTW_METHOD_LB_TI, q1, c1, 3, 1, &p, &d) == TCDTW_ERR_INVALID_INPUT);
  double const bad[] = {NAN, 1, 1};
  CHECK(tcdtw_dtw(bad, c1, 3, 1, 1, INFINITY, &d, nullptr) == TCDTW_ERR_INVALID_INPUT);
}

TEST_CASE("datasets, search and tuning") {
  auto const values = walks(40, 20, 2, 3);
  tcdtw_dataset* ds = nullptr;
  REQUIRE(tcdtw_dataset_from_values("walks", values.data(), 40, 20, 2, &ds) == TCDTW_OK);
  std::size_t count = 0, n = 0, d = 0;
  CHECK(tcdtw_dataset_shape(ds, &count, &n, &d) == TCDTW_OK);
  CHECK(count == 40);
  CHECK(n == 20);
  CHECK(d == 2);
  CHECK(tcdtw_dataset_normalize(ds) == TCDTW_OK);
  double const* first = nullptr;
  CHECK(tcdtw_dataset_series(ds, 0, &first) == TCDTW_OK);
  CHECK(first != nullptr);
  CHECK(tcdtw_dataset_series(ds, 40, &first) == TCDTW_ERR_INVALID_INPUT);

  tcdtw_dataset* queries = nullptr;
  tcdtw_dataset* cands = nullptr;
  REQUIRE(tcdtw_dataset_split(ds, 0.3, 42, &queries, &cands) == TCDTW_OK);
  CHECK(tcdtw_dataset_shape(queries, &count, nullptr, nullptr) == TCDTW_OK);
  CHECK(count == 12);

  tcdtw_params p;
  tcdtw_params_default(&p);
  p.window = 4;
  p.method = TCDTW_METHOD_TC_DTW;
  std::vector<tcdtw_nn_result> res(12);
  CHECK(tcdtw_search(queries, cands, &p, 1, res.data(), res.size()) == TCDTW_ERR_INVALID_INPUT);
  CHECK(tcdtw_tune(queries, cands, 42, TCDTW_TUNE_WORK, &p) == TCDTW_OK);
  CHECK((p.tc_choice == TCDTW_METHOD_LB_TI || p.tc_choice == TCDTW_METHOD_LB_PC));
  CHECK(tcdtw_search(queries, cands, &p, 2, res.data(), res.size()) == TCDTW_OK);
  CHECK(tcdtw_search(queries, cands, &p, 2, res.data(), 3) == TCDTW_ERR_INVALID_INPUT);

  tcdtw_params none = p;
  none.method = TCDTW_METHOD_NONE;
  std::vector<tcdtw_nn_result> ref(12);
  CHECK(tcdtw_search(queries, cands, &none, 1, ref.data(), ref.size()) == TCDTW_OK);
  for (std::size_t i = 0; i < 12; ++i) {
    CHECK(res[i].best_index == ref[i].best_index);
    CHECK(res[i].best_distance == ref[i].best_distance);
    CHECK(res[i].dtw_computed + res[i].dtw_skipped == 28);
  }

  tcdtw_params sel = p;
  sel.tc_choice = TCDTW_METHOD_NONE;
  CHECK(tcdtw_select(queries, cands, 1, TCDTW_TUNE_WORK, &sel) == TCDTW_OK);
  CHECK(sel.tc_choice != TCDTW_METHOD_NONE);

  tcdtw_verify_result vr{};
  CHECK(tcdtw_verify(ds, &p, 20, 1, &vr) == TCDTW_OK);
  CHECK(vr.pairs == 20);
  CHECK(vr.violations == 0);

  CHECK(tcdtw_dataset_truncate_dims(ds, 1) == TCDTW_OK);
  CHECK(tcdtw_dataset_shape(ds, nullptr, nullptr, &d) == TCDTW_OK);
  CHECK(d == 1);
  CHECK(tcdtw_dataset_truncate_dims(ds, 5) == TCDTW_ERR_INVALID_INPUT);

  auto const path = (std::filesystem::temp_directory_path() / "tcdtw_capi_ds.txt").string();
  CHECK(tcdtw_dataset_write_native(ds, path.c_str()) == TCDTW_OK);
  tcdtw_dataset* back = nullptr;
  CHECK(tcdtw_dataset_load(path.c_str(), TCDTW_FORMAT_NATIVE, &back) == TCDTW_OK);
  CHECK(tcdtw_dataset_shape(back, &count, &n, &d) == TCDTW_OK);
  CHECK(count == 40);
  CHECK(d == 1);

  tcdtw_dataset_free(back);
  tcdtw_dataset_free(queries);
  tcdtw_dataset_free(cands);
  tcdtw_dataset_free(ds);
  tcdtw_dataset_free(nullptr);
  std::filesystem::remove(path);
}

TEST_CASE("load errors map to parse status") {
  tcdtw_dataset* ds = nullptr;
  CHECK(tcdtw_dataset_load("/nonexistent/x.txt", TCDTW_FORMAT_NATIVE, &ds) == TCDTW_ERR_PARSE);
  auto const path = (std::filesystem::temp_directory_path() / "tcdtw_capi_bad.ts").string();
  std::ofstream(path) << "@equalLength false\n@data\n1,2\n";
  CHECK(tcdtw_dataset_load(path.c_str(), TCDTW_FORMAT_TS, &ds) == TCDTW_ERR_PARSE);
  CHECK(std::string(tcdtw_last_error()).find("line 1") != std::string::npos);
  std::filesystem::remove(path);
}

TEST_CASE("benchmark through handles") {
  auto const values = walks(30, 16, 2, 5);
  tcdtw_dataset* ds = nullptr;
  REQUIRE(tcdtw_dataset_from_values("bench", values.data(), 30, 16, 2, &ds) == TCDTW_OK);
  auto const path = (std::filesystem::temp_directory_path() / "tcdtw_capi_bench.txt").string();
  REQUIRE(tcdtw_dataset_write_native(ds, path.c_str()) == TCDTW_OK);
  tcdtw_dataset_free(ds);

  tcdtw_bench_config* cfg = nullptr;
  REQUIRE(tcdtw_bench_config_new(&cfg) == TCDTW_OK);
  tcdtw_report* report = nullptr;
  CHECK(tcdtw_bench_run(cfg, &report) == TCDTW_ERR_CONFIG);
  CHECK(tcdtw_bench_config_add_data(cfg, path.c_str()) == TCDTW_OK);
  CHECK(tcdtw_bench_config_add_method(cfg, TCDTW_METHOD_NONE) == TCDTW_OK);
  CHECK(tcdtw_bench_config_add_method(cfg, TCDTW_METHOD_TC_DTW) == TCDTW_OK);
  CHECK(tcdtw_bench_config_add_window(cfg, 3) == TCDTW_OK);
  CHECK(tcdtw_bench_config_add_dims(cfg, 0) == TCDTW_OK);
  CHECK(tcdtw_bench_config_add_dims(cfg, 1) == TCDTW_OK);
  CHECK(tcdtw_bench_config_set_reps(cfg, 1) == TCDTW_OK);
  CHECK(tcdtw_bench_config_set_threads(cfg, 2) == TCDTW_OK);
  CHECK(tcdtw_bench_config_set_tune(cfg, 0, TCDTW_TUNE_WORK) == TCDTW_OK);
  tcdtw_params p;
  tcdtw_params_default(&p);
  p.e_ti = 1.5;
  CHECK(tcdtw_bench_config_set_params(cfg, &p) == TCDTW_ERR_CONFIG);
  p.e_ti = 0.2;
  CHECK(tcdtw_bench_config_set_params(cfg, &p) == TCDTW_OK);

  REQUIRE(tcdtw_bench_run(cfg, &report) == TCDTW_OK);
  REQUIRE(tcdtw_report_size(report) == 4);
  tcdtw_report_row row{};
  CHECK(tcdtw_report_row_at(report, 0, &row) == TCDTW_OK);
  CHECK(std::string(row.dataset) == "tcdtw_capi_bench");
  CHECK(row.method == TCDTW_METHOD_NONE);
  CHECK(row.speedup == 1.0);
  CHECK(row.dims == 2);
  CHECK(row.seed == 42);
  CHECK(tcdtw_report_row_at(report, 2, &row) == TCDTW_OK);
  CHECK(row.dims == 1);
  CHECK(tcdtw_report_row_at(report, 4, &row) == TCDTW_ERR_INVALID_INPUT);

  char* csv = nullptr;
  CHECK(tcdtw_report_emit(report, TCDTW_EMIT_CSV, 0, &csv) == TCDTW_OK);
  CHECK(std::string(csv).rfind("dataset,method,window,dims,skip_pct", 0) == 0);
  tcdtw_string_free(csv);
  char* json = nullptr;
  CHECK(tcdtw_report_emit(report, TCDTW_EMIT_JSON, 0, &json) == TCDTW_OK);
  CHECK(std::string(json).find("\"rows\"") != std::string::npos);
  tcdtw_string_free(json);

  tcdtw_report_free(report);
  tcdtw_bench_config_free(cfg);
  std::filesystem::remove(path);
}
