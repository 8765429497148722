#pragma once

#include "tcdtw/core.hpp"

#include <vector>

namespace tcdtw {

  /// Axis-aligned boxes clustering the query points of one expanded window.
  /// Box k spans lo[k*dims .. k*dims+dims) to hi[k*dims .. k*dims+dims).
  struct BoxSet {
    std::size_t dims = 0;
    /// Query index range [first, last] the boxes were built from.
    std::size_t first = 0;
    std::size_t last = 0;
    std::vector<double> lo;
    std::vector<double> hi;

    [[nodiscard]] std::size_t size() const noexcept { return dims == 0 ? 0 : lo.size() / dims; }
  };

  /// Grid quantization of `points` (row-major, `dims` values each) into at most `max_clusters` boxes.
  ///
  /// Each dimension's [min, max] is cut into `levels` equal segments, unless its range is zero or
  /// below `min_cell_len[p]` (empty span: no minimum). Every nonempty cell yields the tight box of
  /// its own points. Cells are taken in lexicographic cell-index order; cells from position
  /// max_clusters-1 onwards are merged into a single box.
  ///
  /// Throws InvalidInput on empty input, levels == 0 or max_clusters == 0.
  BoxSet quantize_cluster(std::span<double const> points, std::size_t dims, std::size_t levels,
                          std::size_t max_clusters, std::span<double const> min_cell_len = {});

  /// Box sets of one query under uniform window grouping.
  struct BoxSets {
    std::size_t length = 0;
    std::size_t dims = 0;
    std::size_t window = 0;
    std::size_t expansion = 1;
    /// Group g covers query indices [g*w - W, g*w + W + w - 1], clipped to the series.
    std::vector<BoxSet> groups;

    /// Boxes used for the original window centred at i.
    [[nodiscard]] BoxSet const& for_index(std::size_t i) const noexcept { return groups[i / expansion]; }
  };

  struct ClusterParams {
    std::size_t levels = 2;
    std::size_t max_clusters = 6;
    std::size_t expansion = 6;
    double min_cell_frac = 0.00001;
  };

  /// Groups `expansion` consecutive windows and clusters each group's query points.
  /// `value_range` is the per-dimension dataset range min_cell_frac refers to; when empty the
  /// query's own range is used. Throws InvalidInput on bad parameters.
  BoxSets build_box_sets(Series const& q, std::size_t window, ClusterParams const& params,
                         std::span<double const> value_range = {});

  /// Euclidean distance from a point to box k of a set (0 inside the box).
  double box_distance(double const* x, BoxSet const& set, std::size_t k) noexcept;

  /// Sum over candidate points of the distance to the nearest box of that point's window.
  /// Throws InvalidInput if `c` does not match the shape the boxes were built for.
  BoundResult lb_pc(Series const& c, BoxSets const& boxes, double abandon_above = kInfinity);

} // namespace tcdtw
