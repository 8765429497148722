#pragma once

#include "tcdtw/core.hpp"

namespace tcdtw {

  struct DtwResult {
    /// Exact banded distance, or the partial row minimum when `abandoned`.
    double distance = 0.0;
    bool abandoned = false;
    std::size_t cells_computed = 0;
  };

  /// Dependent multivariate DTW under a Sakoe-Chiba band of half-width `window` (capped at n-1).
  /// Cell cost is the Euclidean point distance, the result is the plain path sum.
  ///
  /// When `abandon_above` is finite the computation stops as soon as every cell of a row exceeds it,
  /// or when the final distance does. Throws InvalidInput on length or dimension mismatch.
  DtwResult dtw_banded(Series const& q, Series const& c, std::size_t window, double abandon_above = kInfinity);

} // namespace tcdtw
