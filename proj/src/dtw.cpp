#include "tcdtw/dtw.hpp"

#include <algorithm>
#include <vector>

namespace tcdtw {

  DtwResult dtw_banded(Series const& q, Series const& c, std::size_t window, double abandon_above) {
    require_same_shape(q, c);
    std::size_t const n = q.length();
    std::size_t const dims = q.dims();
    std::size_t const w = std::min(window, n - 1);

    // Row i of the 1-indexed cost matrix is stored by band offset: cell (i,j) lives at j - i + w + 1.
    // Offsets 0 and 2w+2 are permanent +inf sentinels for the cells just outside the band.
    std::size_t const width = 2 * w + 3;
    std::vector<double> prev(width, kInfinity);
    std::vector<double> curr(width, kInfinity);
    prev[w + 1] = 0.0; // DTW(0,0)

    DtwResult result;
    double const* qd = q.data();
    double const* cd = c.data();

    for (std::size_t i = 1; i <= n; ++i) {
      std::fill(curr.begin(), curr.end(), kInfinity);
      std::size_t const jlo = i > w ? i - w : 1;
      std::size_t const jhi = std::min(n, i + w);
      double row_min = kInfinity;
      double const* qi = qd + (i - 1) * dims;
      for (std::size_t j = jlo; j <= jhi; ++j) {
        std::size_t const k = j + w + 1 - i;
        double const best = std::min({curr[k - 1], prev[k], prev[k + 1]});
        double const v = best + point_distance(qi, cd + (j - 1) * dims, dims);
        curr[k] = v;
        row_min = std::min(row_min, v);
      }
      result.cells_computed += jhi - jlo + 1;
      std::swap(prev, curr);
      if (row_min > abandon_above) {
        result.distance = row_min;
        result.abandoned = true;
        return result;
      }
    }

    result.distance = prev[w + 1]; // cell (n,n)
    result.abandoned = result.distance > abandon_above;
    return result;
  }

} // namespace tcdtw
