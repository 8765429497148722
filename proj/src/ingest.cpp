#include "tcdtw/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace tcdtw {

  std::string_view to_string(Format f) noexcept {
    return f == Format::Native ? "native" : "ts";
  }

  std::optional<Format> parse_format(std::string_view name) noexcept {
    if (name == "native") { return Format::Native; }
    if (name == "ts") { return Format::Ts; }
    return std::nullopt;
  }

  namespace {

    std::string_view trim(std::string_view s) {
      auto const b = s.find_first_not_of(" \t\r");
      if (b == std::string_view::npos) { return {}; }
      auto const e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    }

    std::string lower(std::string_view s) {
      std::string out(s);
      std::transform(out.begin(), out.end(), out.begin(), [](unsigned char ch) { return std::tolower(ch); });
      return out;
    }

    /// Splits on any run of the given separators, dropping empty pieces.
    std::vector<std::string_view> tokens(std::string_view s, std::string_view seps) {
      std::vector<std::string_view> out;
      std::size_t pos = 0;
      while (pos < s.size()) {
        auto const b = s.find_first_not_of(seps, pos);
        if (b == std::string_view::npos) { break; }
        auto const e = s.find_first_of(seps, b);
        out.push_back(s.substr(b, e == std::string_view::npos ? std::string_view::npos : e - b));
        pos = e == std::string_view::npos ? s.size() : e;
      }
      return out;
    }

    /// Splits on every separator, keeping empty pieces.
    std::vector<std::string_view> fields(std::string_view s, char sep) {
      std::vector<std::string_view> out;
      std::size_t pos = 0;
      while (true) {
        auto const e = s.find(sep, pos);
        out.push_back(s.substr(pos, e == std::string_view::npos ? std::string_view::npos : e - pos));
        if (e == std::string_view::npos) { break; }
        pos = e + 1;
      }
      return out;
    }

    bool is_missing(std::string_view tok) {
      return tok == "?" || tok == "NA" || tok == "na" || tok == "NaN" || tok == "nan" || tok == "NAN";
    }

    double parse_value(std::string_view tok, std::size_t line, std::size_t& missing) {
      tok = trim(tok);
      if (is_missing(tok)) {
        ++missing;
        return 0.0;
      }
      if (!tok.empty() && tok.front() == '+') { tok.remove_prefix(1); }
      double v = 0.0;
      auto const [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw ParseError("invalid numeric value '" + std::string(tok) + "'", line);
      }
      return v;
    }

    std::size_t parse_count(std::string_view tok, std::size_t line, char const* what) {
      std::size_t v = 0;
      auto const [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size() || v == 0) {
        throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line);
      }
      return v;
    }

    /// Iterates lines, tracking 1-based line numbers.
    class LineReader {
    public:
      explicit LineReader(std::string_view text) : text_(text) {}

      bool next(std::string_view& line) {
        if (pos_ >= text_.size()) { return false; }
        auto const e = text_.find('\n', pos_);
        line = text_.substr(pos_, e == std::string_view::npos ? std::string_view::npos : e - pos_);
        pos_ = e == std::string_view::npos ? text_.size() : e + 1;
        ++number_;
        return true;
      }

      [[nodiscard]] std::size_t number() const noexcept { return number_; }

    private:
      std::string_view text_;
      std::size_t pos_ = 0;
      std::size_t number_ = 0;
    };

    std::string read_file(std::filesystem::path const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) { throw ParseError("cannot open '" + path.string() + "'", 0); }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

  } // namespace

  RawDataset parse_native(std::string_view text, std::string name) {
    RawDataset raw;
    raw.name = std::move(name);
    raw.format = Format::Native;

    LineReader reader(text);
    std::string_view line;
    auto next_data_line = [&]() -> bool {
      while (reader.next(line)) {
        line = trim(line);
        if (!line.empty() && line.front() != '#') { return true; }
      }
      return false;
    };

    if (!next_data_line()) { throw ParseError("missing header '<num_series> <length> <dims>'", reader.number()); }
    auto const header = tokens(line, " \t");
    if (header.size() != 3) {
      throw ParseError("header must be '<num_series> <length> <dims>'", reader.number());
    }
    std::size_t const count = parse_count(header[0], reader.number(), "series count");
    raw.length = parse_count(header[1], reader.number(), "series length");
    raw.dims = parse_count(header[2], reader.number(), "dimension count");

    raw.series.reserve(count);
    std::vector<double> values;
    for (std::size_t s = 0; s < count; ++s) {
      values.clear();
      values.reserve(raw.length * raw.dims);
      for (std::size_t t = 0; t < raw.length; ++t) {
        if (!next_data_line()) {
          throw ParseError("unexpected end of file: expected " + std::to_string(count) + " series of "
                           + std::to_string(raw.length) + " rows", reader.number());
        }
        auto const toks = tokens(line, " \t");
        if (toks.size() != raw.dims) {
          throw ParseError("expected " + std::to_string(raw.dims) + " values, found " + std::to_string(toks.size()),
                           reader.number());
        }
        for (auto tok : toks) { values.push_back(parse_value(tok, reader.number(), raw.missing)); }
      }
      raw.series.emplace_back(raw.length, raw.dims, values);
    }
    if (next_data_line()) { throw ParseError("unexpected data after the last series", reader.number()); }
    return raw;
  }

  RawDataset parse_native_file(std::filesystem::path const& path) {
    return parse_native(read_file(path), path.stem().string());
  }

  RawDataset parse_ts(std::string_view text, std::string name) {
    RawDataset raw;
    raw.name = std::move(name);
    raw.format = Format::Ts;

    std::optional<bool> class_label;
    std::optional<std::size_t> declared_dims;
    std::optional<std::size_t> declared_length;
    bool in_data = false;

    LineReader reader(text);
    std::string_view line;
    std::vector<double> values;
    while (reader.next(line)) {
      line = trim(line);
      std::size_t const ln = reader.number();
      if (line.empty() || line.front() == '#') { continue; }

      if (!in_data) {
        if (line.front() != '@') { throw ParseError("expected a '@' directive before @data", ln); }
        auto const parts = tokens(line.substr(1), " \t");
        std::string const key = lower(parts.empty() ? std::string_view{} : parts[0]);
        std::string const arg = parts.size() > 1 ? lower(parts[1]) : std::string{};
        auto flag = [&]() {
          if (arg == "true") { return true; }
          if (arg == "false") { return false; }
          throw ParseError("@" + key + " expects true or false", ln);
        };
        if (key == "data") {
          in_data = true;
        } else if (key == "problemname" || key == "missing" || key == "univariate") {
          // informational
        } else if (key == "timestamps") {
          if (flag()) { throw ParseError("@timeStamps true is not supported", ln); }
        } else if (key == "equallength") {
          if (!flag()) { throw ParseError("unequal-length series are not supported (@equalLength false)", ln); }
        } else if (key == "classlabel") {
          class_label = flag();
        } else if (key == "dimension" || key == "dimensions") {
          declared_dims = parse_count(parts.size() > 1 ? parts[1] : std::string_view{}, ln, "dimension count");
        } else if (key == "serieslength") {
          declared_length = parse_count(parts.size() > 1 ? parts[1] : std::string_view{}, ln, "series length");
        } else {
          throw ParseError("unsupported directive '@" + std::string(parts.empty() ? "" : parts[0]) + "'", ln);
        }
        continue;
      }

      auto segments = fields(line, ':');
      bool has_label = false;
      if (class_label) {
        has_label = *class_label;
      } else if (declared_dims) {
        has_label = segments.size() == *declared_dims + 1;
      }
      if (has_label) {
        if (segments.size() < 2) { throw ParseError("series line has no dimensions before the class label", ln); }
        segments.pop_back();
      }
      std::size_t const dims = segments.size();
      if (declared_dims && dims != *declared_dims) {
        throw ParseError("expected " + std::to_string(*declared_dims) + " dimensions, found " + std::to_string(dims), ln);
      }
      if (raw.dims != 0 && dims != raw.dims) {
        throw ParseError("ragged dimensions: expected " + std::to_string(raw.dims) + ", found " + std::to_string(dims), ln);
      }

      std::vector<std::vector<double>> per_dim(dims);
      for (std::size_t p = 0; p < dims; ++p) {
        for (auto tok : fields(segments[p], ',')) { per_dim[p].push_back(parse_value(tok, ln, raw.missing)); }
        if (per_dim[p].size() != per_dim[0].size()) {
          throw ParseError("dimension " + std::to_string(p + 1) + " has " + std::to_string(per_dim[p].size())
                           + " values, dimension 1 has " + std::to_string(per_dim[0].size()), ln);
        }
      }
      std::size_t const length = per_dim[0].size();
      if (declared_length && length != *declared_length) {
        throw ParseError("expected series length " + std::to_string(*declared_length) + ", found " + std::to_string(length), ln);
      }
      if (raw.length != 0 && length != raw.length) {
        throw ParseError("unequal series length: expected " + std::to_string(raw.length) + ", found "
                         + std::to_string(length), ln);
      }
      raw.length = length;
      raw.dims = dims;

      values.assign(length * dims, 0.0);
      for (std::size_t t = 0; t < length; ++t) {
        for (std::size_t p = 0; p < dims; ++p) { values[t * dims + p] = per_dim[p][t]; }
      }
      raw.series.emplace_back(length, dims, values);
    }

    if (!in_data) { throw ParseError("missing @data section", reader.number()); }
    if (raw.series.empty()) { throw ParseError("no series after @data", reader.number()); }
    return raw;
  }

  RawDataset parse_ts_file(std::filesystem::path const& path) {
    return parse_ts(read_file(path), path.stem().string());
  }

  RawDataset load_file(std::filesystem::path const& path, Format format) {
    return format == Format::Native ? parse_native_file(path) : parse_ts_file(path);
  }

  Dataset finalize(RawDataset raw) {
    Dataset ds;
    ds.name = std::move(raw.name);
    ds.series = std::move(raw.series);
    ds.length = raw.length;
    ds.dims = raw.dims;
    ds.validate();
    return ds;
  }

  Dataset normalize(Dataset ds) {
    ds.validate();
    std::size_t const dims = ds.dims;
    std::vector<double> mean(dims, 0.0);
    std::vector<double> var(dims, 0.0);
    double const count = static_cast<double>(ds.series.size() * ds.length);
    for (auto const& s : ds.series) {
      for (std::size_t i = 0; i < s.length(); ++i) {
        for (std::size_t p = 0; p < dims; ++p) { mean[p] += s.point(i)[p]; }
      }
    }
    for (auto& m : mean) { m /= count; }
    for (auto const& s : ds.series) {
      for (std::size_t i = 0; i < s.length(); ++i) {
        for (std::size_t p = 0; p < dims; ++p) {
          double const d = s.point(i)[p] - mean[p];
          var[p] += d * d;
        }
      }
    }

    for (auto& s : ds.series) {
      std::vector<double> values(s.values().begin(), s.values().end());
      for (std::size_t k = 0; k < values.size(); ++k) {
        std::size_t const p = k % dims;
        double const sd = std::sqrt(var[p] / count);
        values[k] = sd > 0.0 ? (values[k] - mean[p]) / sd : 0.0;
      }
      s = Series(ds.length, dims, std::move(values));
    }
    ds.normalized = true;
    ds.value_range = value_range(ds.series);
    return ds;
  }

  Dataset normalize(RawDataset raw) { return normalize(finalize(std::move(raw))); }

  Dataset truncate_dims(Dataset const& ds, std::size_t dims_used) {
    if (dims_used < 1 || dims_used > ds.dims) {
      throw InvalidInput("dims_used must lie in [1, " + std::to_string(ds.dims) + "], got " + std::to_string(dims_used));
    }
    if (dims_used == ds.dims) { return ds; }
    Dataset out;
    out.name = ds.name;
    out.length = ds.length;
    out.dims = dims_used;
    out.normalized = ds.normalized;
    if (!ds.value_range.empty()) { out.value_range.assign(ds.value_range.begin(), ds.value_range.begin() + dims_used); }
    out.series.reserve(ds.series.size());
    for (auto const& s : ds.series) {
      std::vector<double> values;
      values.reserve(ds.length * dims_used);
      for (std::size_t i = 0; i < s.length(); ++i) {
        auto const pt = s.point(i);
        values.insert(values.end(), pt.begin(), pt.begin() + dims_used);
      }
      out.series.emplace_back(ds.length, dims_used, std::move(values));
    }
    return out;
  }

  Split split(Dataset const& ds, double query_frac, std::uint64_t seed) {
    if (!(query_frac > 0.0 && query_frac < 1.0)) { throw InvalidInput("query fraction must lie in (0,1)"); }
    std::size_t const total = ds.series.size();
    auto const k = static_cast<std::size_t>(std::llround(query_frac * static_cast<double>(total)));
    if (k == 0 || k >= total) {
      throw InvalidInput("split of " + std::to_string(total) + " series at fraction " + std::to_string(query_frac)
                         + " leaves one side empty");
    }
    auto perm = seeded_permutation(total, seed);
    Split out;
    out.query_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
    out.candidate_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(k), perm.end());
    std::sort(out.query_indices.begin(), out.query_indices.end());
    std::sort(out.candidate_indices.begin(), out.candidate_indices.end());
    for (auto i : out.query_indices) { out.queries.push_back(ds.series[i]); }
    for (auto i : out.candidate_indices) { out.candidates.push_back(ds.series[i]); }
    return out;
  }

  std::string write_native(Dataset const& ds) {
    std::string out;
    out += std::to_string(ds.series.size()) + " " + std::to_string(ds.length) + " " + std::to_string(ds.dims) + "\n";
    char buf[32];
    for (auto const& s : ds.series) {
      for (std::size_t i = 0; i < s.length(); ++i) {
        auto const pt = s.point(i);
        for (std::size_t p = 0; p < pt.size(); ++p) {
          std::snprintf(buf, sizeof buf, "%.17g", pt[p]);
          if (p != 0) { out += ' '; }
          out += buf;
        }
        out += '\n';
      }
    }
    return out;
  }

  void write_native_file(Dataset const& ds, std::filesystem::path const& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) { throw InvalidInput("cannot write '" + path.string() + "'"); }
    out << write_native(ds);
  }

} // namespace tcdtw
