#pragma once

#include "tcdtw/core.hpp"

#include <vector>

namespace tcdtw {

  /// Per-dimension windowed max/min of a query, truncated at the series ends.
  struct Envelope {
    std::size_t length = 0;
    std::size_t dims = 0;
    std::size_t window = 0;
    /// Row-major length x dims, same layout as Series.
    std::vector<double> upper;
    std::vector<double> lower;
  };

  Envelope build_envelope(Series const& q, std::size_t window);

  /// Sum over points of the Euclidean distance from c_i to the envelope box at i.
  /// Throws InvalidInput if `c` does not match the envelope shape.
  BoundResult lb_mv(Series const& c, Envelope const& env, double abandon_above = kInfinity);

  /// Sum over candidate points of the smallest true distance to any query point in its window.
  /// Tight but about as costly as DTW; used as an oracle for the cheaper bounds.
  BoundResult lb_ad(Series const& q, Series const& c, std::size_t window, double abandon_above = kInfinity);

} // namespace tcdtw
