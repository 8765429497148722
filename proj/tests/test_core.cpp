#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "tcdtw/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

using namespace tcdtw;

namespace {
  std::vector<double> pt(std::initializer_list<double> v) { return v; }
}

TEST_CASE("point_distance examples") {
  CHECK(point_distance(pt({0, 0}), pt({0, 0})) == 0.0);
  CHECK(point_distance(pt({0, 0}), pt({3, 4})) == 5.0);
  CHECK(point_distance(pt({1}), pt({4})) == 3.0);
}

TEST_CASE("point_distance rejects mismatched dimensions") {
  CHECK_THROWS_AS(point_distance(pt({1, 2}), pt({1})), InvalidInput);
}

TEST_CASE("point_distance is symmetric and a metric") {
  oracle::Rng rng(7);
  std::normal_distribution<double> g(0.0, 3.0);
  for (int t = 0; t < 2000; ++t) {
    std::size_t const d = 1 + static_cast<std::size_t>(t % 10);
    std::vector<double> a(d), b(d), c(d);
    for (std::size_t p = 0; p < d; ++p) {
      a[p] = g(rng);
      b[p] = g(rng);
      c[p] = g(rng);
    }
    double const ab = point_distance(a, b);
    double const ac = point_distance(a, c);
    double const bc = point_distance(b, c);
    CHECK(ab == point_distance(b, a));
    CHECK(ab >= 0.0);
    // Rounding can move each side by a few ulps.
    double const slack = 1e-12 * (ab + ac + bc);
    CHECK(std::abs(ac - bc) <= ab + slack);
    CHECK(ab <= ac + bc + slack);
  }
}

TEST_CASE("Series validates its shape and values") {
  CHECK_NOTHROW(Series(2, 2, {0, 0, 0, 0}));
  CHECK_THROWS_AS(Series(0, 1, {}), InvalidInput);
  CHECK_THROWS_AS(Series(1, 0, {}), InvalidInput);
  CHECK_THROWS_AS(Series(2, 2, {0, 0, 0}), InvalidInput);
  CHECK_THROWS_AS(Series(1, 1, {std::numeric_limits<double>::quiet_NaN()}), InvalidInput);
  CHECK_THROWS_AS(Series(1, 1, {std::numeric_limits<double>::infinity()}), InvalidInput);

  Series const s(3, 2, {1, 2, 3, 4, 5, 6});
  CHECK(s.point(1)[0] == 3);
  CHECK(s.point(2)[1] == 6);
  CHECK_THROWS_AS(require_same_shape(s, Series(3, 1, {1, 2, 3})), InvalidInput);
  CHECK_THROWS_AS(require_same_shape(s, Series(2, 2, {1, 2, 3, 4})), InvalidInput);
}

TEST_CASE("Dataset validation") {
  Dataset ds;
  ds.name = "x";
  ds.length = 2;
  ds.dims = 1;
  ds.series = {Series(2, 1, {1, 2}), Series(2, 1, {3, 4})};
  CHECK_NOTHROW(ds.validate());
  ds.series.emplace_back(3, 1, std::vector<double>{1, 2, 3});
  CHECK_THROWS_AS(ds.validate(), InvalidInput);
  ds.series.pop_back();
  ds.value_range = {1.0, 2.0};
  CHECK_THROWS_AS(ds.validate(), InvalidInput);
}

TEST_CASE("value_range spans every series") {
  std::vector<Series> s{Series(2, 2, {0, 5, 1, 5}), Series(2, 2, {-2, 5, 3, 5})};
  auto const r = value_range(s);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == 5.0);
  CHECK(r[1] == 0.0);
}

TEST_CASE("method names round-trip") {
  for (auto m : {Method::None, Method::LbMv, Method::LbTi, Method::LbPc, Method::TcDtw, Method::LbAd}) {
    auto const back = parse_method(to_string(m));
    REQUIRE(back.has_value());
    CHECK(*back == m);
  }
  CHECK(to_string(Method::TcDtw) == "tc_dtw");
  CHECK_FALSE(parse_method("lb_keogh").has_value());
}

TEST_CASE("SearchParams defaults and validation") {
  SearchParams p;
  CHECK(p.period == 5);
  CHECK(p.max_clusters == 6);
  CHECK(p.expansion == 6);
  CHECK(p.min_cell_frac == 0.00001);
  CHECK(p.ti_variant == TiVariant::TipTop);
  CHECK_NOTHROW(p.validate());

  CHECK(p.effective_window(5) == 4);
  CHECK(p.effective_window(50) == 10);
  p.window = 0;
  CHECK(p.effective_window(1) == 0);

  auto bad = [](auto mutate) {
    SearchParams q;
    mutate(q);
    return q;
  };
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.period = 0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.e_ti = 1.0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.e_pc = 0.0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.quant_levels = 0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.max_clusters = 0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.expansion = 0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.min_cell_frac = 0.0; }).validate(), InvalidInput);
  CHECK_THROWS_AS(bad([](SearchParams& q) { q.tc_choice = Method::LbMv; }).validate(), InvalidInput);
}

TEST_CASE("seeded_permutation is a reproducible permutation") {
  auto const a = seeded_permutation(100, 42);
  auto const b = seeded_permutation(100, 42);
  auto const c = seeded_permutation(100, 43);
  CHECK(a == b);
  CHECK(a != c);
  std::set<std::size_t> seen(a.begin(), a.end());
  CHECK(seen.size() == 100);
  CHECK(*seen.rbegin() == 99);
  CHECK(seeded_permutation(0, 1).empty());
  CHECK(seeded_permutation(1, 1) == std::vector<std::size_t>{0});
}

TEST_CASE("ParseError carries its line") {
  ParseError e("bad token", 17);
  CHECK(e.line() == 17);
  CHECK(std::string(e.what()).find("17") != std::string::npos);
}
