#include "tcdtw/core.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <utility>

namespace tcdtw {

  ParseError::ParseError(std::string const& what, std::size_t line)
    : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  Series::Series(std::size_t length, std::size_t dims, std::vector<double> values)
    : length_(length), dims_(dims), values_(std::move(values)) {
    if (length_ == 0) { throw InvalidInput("series length must be >= 1"); }
    if (dims_ == 0) { throw InvalidInput("series dimension must be >= 1"); }
    if (values_.size() != length_ * dims_) {
      throw InvalidInput("series holds " + std::to_string(values_.size()) + " values, expected "
                         + std::to_string(length_ * dims_));
    }
    for (double v : values_) {
      if (!std::isfinite(v)) { throw InvalidInput("series values must be finite"); }
    }
  }

  void require_same_shape(Series const& a, Series const& b) {
    if (a.length() != b.length()) {
      throw InvalidInput("series length mismatch: " + std::to_string(a.length()) + " vs " + std::to_string(b.length()));
    }
    if (a.dims() != b.dims()) {
      throw InvalidInput("series dimension mismatch: " + std::to_string(a.dims()) + " vs " + std::to_string(b.dims()));
    }
  }

  double point_distance(PointView a, PointView b) {
    if (a.size() != b.size()) {
      throw InvalidInput("point dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    return point_distance(a.data(), b.data(), a.size());
  }

  void Dataset::validate() const {
    for (auto const& s : series) {
      if (s.length() != length || s.dims() != dims) {
        throw InvalidInput("dataset '" + name + "': all series must have length " + std::to_string(length)
                           + " and dimension " + std::to_string(dims));
      }
    }
    if (!value_range.empty() && value_range.size() != dims) {
      throw InvalidInput("dataset '" + name + "': value_range size does not match dimension");
    }
  }

  std::vector<double> value_range(std::span<Series const> series) {
    if (series.empty()) { return {}; }
    std::size_t const dims = series.front().dims();
    std::vector<double> lo(dims, kInfinity);
    std::vector<double> hi(dims, -kInfinity);
    for (auto const& s : series) {
      for (std::size_t i = 0; i < s.length(); ++i) {
        auto const pt = s.point(i);
        for (std::size_t p = 0; p < dims; ++p) {
          lo[p] = std::min(lo[p], pt[p]);
          hi[p] = std::max(hi[p], pt[p]);
        }
      }
    }
    std::vector<double> range(dims);
    for (std::size_t p = 0; p < dims; ++p) { range[p] = hi[p] - lo[p]; }
    return range;
  }

  namespace {
    constexpr std::array<std::pair<Method, std::string_view>, 6> kMethodNames{{
      {Method::None, "none"},
      {Method::LbMv, "lb_mv"},
      {Method::LbTi, "lb_ti"},
      {Method::LbPc, "lb_pc"},
      {Method::TcDtw, "tc_dtw"},
      {Method::LbAd, "lb_ad"},
    }};
  }

  std::string_view to_string(Method m) noexcept {
    for (auto const& [method, name] : kMethodNames) {
      if (method == m) { return name; }
    }
    return "unknown";
  }

  std::optional<Method> parse_method(std::string_view name) noexcept {
    for (auto const& [method, n] : kMethodNames) {
      if (n == name) { return method; }
    }
    return std::nullopt;
  }

  std::string_view to_string(TiVariant v) noexcept {
    switch (v) {
      case TiVariant::Basic: return "basic";
      case TiVariant::Top: return "top";
      case TiVariant::Tip: return "tip";
      case TiVariant::TipTop: return "tip_top";
    }
    return "unknown";
  }

  std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    // Bounded draws by rejection; std::uniform_int_distribution is implementation-defined.
    auto draw = [&rng](std::uint64_t bound) {
      std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
      std::uint64_t x;
      do { x = rng(); } while (x >= limit);
      return x % bound;
    };
    for (std::size_t i = n; i > 1; --i) {
      std::swap(perm[i - 1], perm[draw(i)]);
    }
    return perm;
  }

  void SearchParams::validate() const {
    if (period < 1) { throw InvalidInput("period must be >= 1"); }
    if (!(e_ti > 0.0 && e_ti < 1.0)) { throw InvalidInput("e_ti must lie in (0,1)"); }
    if (!(e_pc > 0.0 && e_pc < 1.0)) { throw InvalidInput("e_pc must lie in (0,1)"); }
    if (quant_levels < 1) { throw InvalidInput("quantization level must be >= 1"); }
    if (max_clusters < 1) { throw InvalidInput("max clusters must be >= 1"); }
    if (expansion < 1) { throw InvalidInput("window expansion factor must be >= 1"); }
    if (!(min_cell_frac > 0.0)) { throw InvalidInput("min_cell_frac must be > 0"); }
    if (tc_choice && *tc_choice != Method::LbTi && *tc_choice != Method::LbPc) {
      throw InvalidInput("tc_choice must be lb_ti or lb_pc");
    }
  }

} // namespace tcdtw
