#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tcdtw {

  constexpr double kInfinity = std::numeric_limits<double>::infinity();

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Errors
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// Shape mismatches, out-of-range parameters, empty inputs.
  class InvalidInput : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
  };

  /// Malformed dataset file. `line()` is 1-based, 0 when the error is not tied to a line.
  class ParseError : public std::runtime_error {
  public:
    ParseError(std::string const& what, std::size_t line);
    [[nodiscard]] std::size_t line() const noexcept { return line_; }
  private:
    std::size_t line_;
  };

  /// Bad benchmark configuration (unknown method, missing file, ...). Raised before any run starts.
  class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
  };

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Series
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// A point is a read-only view over D consecutive values of a series.
  using PointView = std::span<double const>;

  /// Multivariate time series of `length` points in `dims` dimensions, stored row-major
  /// (point i occupies values[i*dims .. i*dims+dims)).
  class Series {
  public:
    Series() = default;

    /// Throws InvalidInput unless length >= 1, dims >= 1, values.size() == length*dims and all values are finite.
    Series(std::size_t length, std::size_t dims, std::vector<double> values);

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::size_t dims() const noexcept { return dims_; }
    [[nodiscard]] bool empty() const noexcept { return length_ == 0; }

    [[nodiscard]] PointView point(std::size_t i) const noexcept { return {values_.data() + i * dims_, dims_}; }
    [[nodiscard]] double const* data() const noexcept { return values_.data(); }
    [[nodiscard]] std::span<double const> values() const noexcept { return values_; }

    friend bool operator==(Series const&, Series const&) = default;

  private:
    std::size_t length_ = 0;
    std::size_t dims_ = 0;
    std::vector<double> values_;
  };

  /// Throws InvalidInput if the two series differ in length or dimension.
  void require_same_shape(Series const& a, Series const& b);

  /// Euclidean distance between two points of equal dimension. Throws InvalidInput on mismatch.
  double point_distance(PointView a, PointView b);

  /// Unchecked Euclidean distance over `dims` values; the hot-path form used by every bound.
  inline double point_distance(double const* a, double const* b, std::size_t dims) noexcept {
    double acc = 0.0;
    for (std::size_t p = 0; p < dims; ++p) {
      double const diff = a[p] - b[p];
      acc += diff * diff;
    }
    return std::sqrt(acc);
  }

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Dataset
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  /// Equal-length, equal-dimension collection of series.
  struct Dataset {
    std::string name;
    std::vector<Series> series;
    std::size_t length = 0;
    std::size_t dims = 0;
    bool normalized = false;
    /// Per-dimension (max - min) over every point of every series. Filled by normalize().
    std::vector<double> value_range;

    /// Throws InvalidInput if any series disagrees with length/dims, or value_range has the wrong size.
    void validate() const;
  };

  /// Per-dimension (max - min) over all points of the given series. Empty input yields an empty vector.
  std::vector<double> value_range(std::span<Series const> series);

  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---
  // Search parameters
  // --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- --- ---

  enum class Method { None, LbMv, LbTi, LbPc, TcDtw, LbAd };

  /// Lower-case CLI name: none, lb_mv, lb_ti, lb_pc, tc_dtw, lb_ad.
  std::string_view to_string(Method m) noexcept;
  std::optional<Method> parse_method(std::string_view name) noexcept;

  /// Variants of the triangle bound. TipTop is the default used by Method::LbTi.
  enum class TiVariant { Basic, Top, Tip, TipTop };

  std::string_view to_string(TiVariant v) noexcept;

  struct SearchParams {
    std::size_t window = 10;
    Method method = Method::LbMv;
    /// Refresh period of the Tip/TipTop triangle variants.
    std::size_t period = 5;
    TiVariant ti_variant = TiVariant::TipTop;
    /// Selective-deployment triggering thresholds, in (0,1).
    double e_ti = 0.1;
    double e_pc = 0.1;
    /// Quantization levels per dimension for point clustering.
    std::size_t quant_levels = 2;
    std::size_t max_clusters = 6;
    /// Number of consecutive windows sharing one set of boxes.
    std::size_t expansion = 6;
    /// Dimensions whose per-window range is below min_cell_frac * dataset range are not split.
    double min_cell_frac = 0.00001;
    /// Bound chosen for Method::TcDtw (LbTi or LbPc); resolved by tc_dtw_select or tune_params.
    std::optional<Method> tc_choice;

    /// Window actually used for series of the given length: min(window, length - 1).
    [[nodiscard]] std::size_t effective_window(std::size_t length) const noexcept {
      return length == 0 ? 0 : std::min(window, length - 1);
    }

    /// Throws InvalidInput on out-of-range values.
    void validate() const;
  };

  /// Fisher-Yates permutation of 0..n-1 driven by mt19937_64, identical on every platform for a given seed.
  std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

  /// Result of a lower-bound evaluation.
  struct BoundResult {
    double value = 0.0;
    /// The running sum exceeded the abandon threshold; `value` is that partial sum.
    bool abandoned = false;
    /// Scalar operations spent, used by the deterministic cost model.
    std::size_t ops = 0;
  };

} // namespace tcdtw
