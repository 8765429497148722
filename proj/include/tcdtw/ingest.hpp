#pragma once

#include "tcdtw/core.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace tcdtw {

  enum class Format { Native, Ts };

  std::string_view to_string(Format f) noexcept;
  std::optional<Format> parse_format(std::string_view name) noexcept;

  /// Parsed file contents before normalization. Missing markers are already replaced with 0.
  struct RawDataset {
    std::string name;
    Format format = Format::Native;
    std::size_t length = 0;
    std::size_t dims = 0;
    std::vector<Series> series;
    /// Number of NA / NaN / ? tokens replaced with 0.
    std::size_t missing = 0;
  };

  /// Native text format:
  ///
  ///     <num_series> <length> <dims>
  ///     <dims values>          (num_series * length lines, series after series)
  ///
  /// Lines starting with '#' and blank lines are ignored. Throws ParseError with the offending line.
  RawDataset parse_native(std::string_view text, std::string name = "dataset");
  RawDataset parse_native_file(std::filesystem::path const& path);

  /// sktime-style .ts subset: '@' directives, '@data', then one series per line with dimensions
  /// separated by ':' and values by ','. A trailing class label is ignored. Unequal lengths,
  /// timestamps and unknown directives are rejected with ParseError.
  RawDataset parse_ts(std::string_view text, std::string name = "dataset");
  RawDataset parse_ts_file(std::filesystem::path const& path);

  /// Dispatch on format. Dataset name is the file stem. Throws ParseError (line 0) if unreadable.
  RawDataset load_file(std::filesystem::path const& path, Format format);

  /// Wraps a raw dataset without changing values.
  Dataset finalize(RawDataset raw);

  /// Per-dimension z-normalization with mean and population stddev over every point of every series.
  /// Zero-variance dimensions become 0. Records the post-normalization value range.
  Dataset normalize(Dataset ds);
  Dataset normalize(RawDataset raw);

  /// Keeps the first `dims_used` dimensions. Throws InvalidInput unless 1 <= dims_used <= dims.
  Dataset truncate_dims(Dataset const& ds, std::size_t dims_used);

  struct Split {
    std::vector<Series> queries;
    std::vector<Series> candidates;
    /// Positions in the source dataset, ascending.
    std::vector<std::size_t> query_indices;
    std::vector<std::size_t> candidate_indices;
  };

  constexpr double kDefaultQueryFraction = 0.3;

  /// Seeded shuffle, then the first round(query_frac * N) series become queries. Both sides keep
  /// file order. Throws InvalidInput if query_frac is outside (0,1) or either side would be empty.
  Split split(Dataset const& ds, double query_frac, std::uint64_t seed);

  /// Native text with 17 significant digits, so parse_native(write_native(d)) reproduces d exactly.
  std::string write_native(Dataset const& ds);
  void write_native_file(Dataset const& ds, std::filesystem::path const& path);

} // namespace tcdtw
