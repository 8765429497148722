#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracle.hpp"
#include "tcdtw/ingest.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

using namespace tcdtw;

namespace {

  /// Line number reported by a parse that must fail.
  template<typename Fn>
  std::size_t error_line(Fn&& fn) {
    try {
      fn();
    } catch (ParseError const& e) {
      return e.line();
    }
    FAIL("expected a ParseError");
    return 0;
  }

  std::filesystem::path temp_file(std::string const& name, std::string const& body) {
    auto const path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path, std::ios::binary) << body;
    return path;
  }

  Dataset random_dataset(oracle::Rng& rng, std::size_t count, std::size_t n, std::size_t d) {
    Dataset ds;
    ds.name = "random";
    ds.length = n;
    ds.dims = d;
    for (std::size_t i = 0; i < count; ++i) { ds.series.push_back(oracle::random_walk(rng, n, d)); }
    return ds;
  }

} // namespace

TEST_CASE("native format: zeros") {
  auto const raw = parse_native("2 3 2\n0 0\n0 0\n0 0\n0 0\n0 0\n0 0\n");
  auto const ds = finalize(raw);
  CHECK(ds.series.size() == 2);
  CHECK(ds.length == 3);
  CHECK(ds.dims == 2);
  CHECK(ds.series[1].values()[5] == 0.0);
}

TEST_CASE("native format: comments, blank lines, missing markers") {
  auto const raw = parse_native("# header follows\n1 3 2\n\n1 NA\n# mid\n? 2.5\n-1e1 nan\n");
  CHECK(raw.missing == 3);
  auto const ds = finalize(raw);
  CHECK(ds.series[0].values()[0] == 1.0);
  CHECK(ds.series[0].values()[1] == 0.0);
  CHECK(ds.series[0].values()[2] == 0.0);
  CHECK(ds.series[0].values()[3] == 2.5);
  CHECK(ds.series[0].values()[4] == -10.0);
  CHECK(ds.series[0].values()[5] == 0.0);
}

TEST_CASE("native format errors name the line") {
  CHECK(error_line([] { parse_native("1 2 2\n0 0\n0 0 0\n"); }) == 3);
  CHECK(error_line([] { parse_native("1 2 2\n0 0\n0 x\n"); }) == 3);
  CHECK(error_line([] { parse_native("1 2\n0 0\n"); }) == 1);
  CHECK(error_line([] { parse_native("# c\n0 2 1\n"); }) == 2);
  CHECK(error_line([] { parse_native("1 2 1\n0\n"); }) == 2);
  CHECK(error_line([] { parse_native("1 1 1\n0\n5\n"); }) == 3);
  CHECK(error_line([] { parse_native(""); }) == 0);
  CHECK(error_line([] { parse_native("1 1 1\ninf\n"); }) == 2);
  CHECK_THROWS_WITH(parse_native("1 2 2\n0 0\n0 0 0\n"), doctest::Contains("line 3"));
}

TEST_CASE("ts format") {
  std::string const body =
    "# comment\n@problemName demo\n@timeStamps false\n@missing true\n@univariate false\n@dimensions 2\n"
    "@equalLength true\n@seriesLength 3\n@classLabel true a b\n@data\n"
    "1,2,3:4,5,6:a\n7,?,9:10,11,12:b\n";
  auto const raw = parse_ts(body);
  CHECK(raw.missing == 1);
  auto const ds = finalize(raw);
  CHECK(ds.series.size() == 2);
  CHECK(ds.length == 3);
  CHECK(ds.dims == 2);
  CHECK(ds.series[0].point(1)[0] == 2.0);
  CHECK(ds.series[0].point(1)[1] == 5.0);
  CHECK(ds.series[1].point(1)[0] == 0.0);

  // Without a classLabel directive, a trailing field beyond the declared dimensions is a label.
  auto const plain = finalize(parse_ts("@dimensions 1\n@data\n1,2:x\n3,4:y\n"));
  CHECK(plain.dims == 1);
  CHECK(plain.series[1].point(1)[0] == 4.0);
}

TEST_CASE("ts format rejections") {
  CHECK(error_line([] { parse_ts("@equalLength false\n@data\n1,2\n"); }) == 1);
  CHECK(error_line([] { parse_ts("@timeStamps true\n@data\n1,2\n"); }) == 1);
  CHECK(error_line([] { parse_ts("@targetlabel true\n@data\n1,2\n"); }) == 1);
  CHECK(error_line([] { parse_ts("@classLabel false\n@data\n1,2:3,4\n1,2\n"); }) == 4);
  CHECK(error_line([] { parse_ts("@classLabel false\n@data\n1,2:3,4\n1,2:3\n"); }) == 4);
  CHECK(error_line([] { parse_ts("@classLabel false\n@data\n1,2\n1,2,3\n"); }) == 4);
  CHECK(error_line([] { parse_ts("@classLabel false\n@data\n1,z\n"); }) == 3);
  CHECK(error_line([] { parse_ts("@classLabel false\n1,2\n"); }) == 2);
  CHECK_THROWS_AS(parse_ts("@classLabel false\n"), ParseError);
  CHECK_THROWS_AS(parse_ts("@classLabel false\n@data\n"), ParseError);
}

TEST_CASE("files and formats") {
  auto const path = temp_file("tcdtw_ingest_sample.txt", "1 2 1\n1\n2\n");
  auto const raw = load_file(path, Format::Native);
  CHECK(raw.name == "tcdtw_ingest_sample");
  CHECK(raw.series.size() == 1);
  std::filesystem::remove(path);
  CHECK(error_line([] { load_file("/nonexistent/tcdtw.txt", Format::Native); }) == 0);
  CHECK(parse_format("ts") == Format::Ts);
  CHECK(parse_format("native") == Format::Native);
  CHECK_FALSE(parse_format("arff").has_value());
}

TEST_CASE("normalize") {
  Dataset ds = finalize(parse_native("2 2 2\n0 5\n2 5\n2 5\n0 5\n"));
  auto const z = normalize(ds);
  CHECK(z.normalized);
  CHECK(z.series[0].values()[0] == -1.0);
  CHECK(z.series[0].values()[2] == 1.0);
  CHECK(z.series[1].values()[0] == 1.0);
  CHECK(z.series[0].values()[1] == 0.0);
  CHECK(z.value_range == std::vector<double>{2.0, 0.0});
}

TEST_CASE("normalize properties") {
  oracle::Rng rng(61);
  auto const ds = random_dataset(rng, 12, 30, 4);
  auto const z = normalize(ds);
  CHECK(z.series.size() == 12);
  CHECK(z.length == 30);
  CHECK(z.dims == 4);
  for (std::size_t p = 0; p < 4; ++p) {
    double sum = 0.0;
    double sq = 0.0;
    for (auto const& s : z.series) {
      for (std::size_t i = 0; i < 30; ++i) {
        sum += s.point(i)[p];
        sq += s.point(i)[p] * s.point(i)[p];
      }
    }
    CHECK(std::abs(sum / 360.0) < 1e-12);
    CHECK(sq / 360.0 == doctest::Approx(1.0).epsilon(1e-12));
  }
  auto const zz = normalize(z);
  double worst = 0.0;
  for (std::size_t k = 0; k < z.series.size(); ++k) {
    for (std::size_t v = 0; v < z.series[k].values().size(); ++v) {
      worst = std::max(worst, std::abs(z.series[k].values()[v] - zz.series[k].values()[v]));
    }
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("truncate_dims") {
  Dataset const ds = finalize(parse_native("1 2 3\n1 2 3\n4 5 6\n"));
  CHECK(truncate_dims(ds, 3).series == ds.series);
  auto const one = truncate_dims(ds, 1);
  CHECK(one.dims == 1);
  CHECK(one.series[0].values()[1] == 4.0);
  auto const two = truncate_dims(ds, 2);
  CHECK(two.series[0].values()[2] == 4.0);
  CHECK(two.series[0].values()[3] == 5.0);
  CHECK_THROWS_AS(truncate_dims(ds, 0), InvalidInput);
  CHECK_THROWS_AS(truncate_dims(ds, 4), InvalidInput);

  oracle::Rng rng(62);
  auto const wide = normalize(random_dataset(rng, 3, 5, 12));
  auto const five = truncate_dims(wide, 5);
  CHECK(five.value_range.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t p = 0; p < 5; ++p) { CHECK(five.series[2].point(i)[p] == wide.series[2].point(i)[p]); }
  }
}

TEST_CASE("split") {
  oracle::Rng rng(63);
  auto const ds = random_dataset(rng, 10, 4, 1);
  auto const a = split(ds, 0.3, 5);
  auto const b = split(ds, 0.3, 5);
  CHECK(a.queries.size() == 3);
  CHECK(a.candidates.size() == 7);
  CHECK(a.query_indices == b.query_indices);
  CHECK(a.candidates == b.candidates);
  CHECK(std::is_sorted(a.candidate_indices.begin(), a.candidate_indices.end()));
  for (std::size_t k = 0; k < a.candidates.size(); ++k) { CHECK(a.candidates[k] == ds.series[a.candidate_indices[k]]); }

  bool differs = false;
  for (std::uint64_t s = 6; s < 20 && !differs; ++s) { differs = split(ds, 0.3, s).query_indices != a.query_indices; }
  CHECK(differs);

  auto const two = random_dataset(rng, 2, 4, 1);
  auto const half = split(two, 0.5, 1);
  CHECK(half.queries.size() == 1);
  CHECK(half.candidates.size() == 1);

  CHECK_THROWS_AS(split(two, 0.1, 1), InvalidInput);
  CHECK_THROWS_AS(split(two, 0.9, 1), InvalidInput);
  CHECK_THROWS_AS(split(ds, 0.0, 1), InvalidInput);
  CHECK_THROWS_AS(split(ds, 1.0, 1), InvalidInput);
}

TEST_CASE("native round trip") {
  oracle::Rng rng(64);
  auto const ds = random_dataset(rng, 5, 7, 3);
  auto const back = finalize(parse_native(write_native(ds)));
  CHECK(back.series == ds.series);
  CHECK(back.length == ds.length);
  CHECK(back.dims == ds.dims);

  auto const path = std::filesystem::temp_directory_path() / "tcdtw_roundtrip.txt";
  write_native_file(ds, path);
  CHECK(finalize(parse_native_file(path)).series == ds.series);
  std::filesystem::remove(path);
}
