#include "tcdtw/lb_pc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

namespace tcdtw {

  BoxSet quantize_cluster(std::span<double const> points, std::size_t dims, std::size_t levels,
                          std::size_t max_clusters, std::span<double const> min_cell_len) {
    if (dims == 0 || points.empty() || points.size() % dims != 0) {
      throw InvalidInput("quantize_cluster: need a nonempty list of points");
    }
    if (levels == 0) { throw InvalidInput("quantize_cluster: levels must be >= 1"); }
    if (max_clusters == 0) { throw InvalidInput("quantize_cluster: max_clusters must be >= 1"); }
    if (!min_cell_len.empty() && min_cell_len.size() != dims) {
      throw InvalidInput("quantize_cluster: min_cell_len must have one entry per dimension");
    }
    std::size_t const count = points.size() / dims;

    std::vector<double> mn(dims, kInfinity);
    std::vector<double> mx(dims, -kInfinity);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t p = 0; p < dims; ++p) {
        mn[p] = std::min(mn[p], points[k * dims + p]);
        mx[p] = std::max(mx[p], points[k * dims + p]);
      }
    }

    // Segment length per dimension; 0 marks an unsplit dimension.
    std::vector<double> seg(dims, 0.0);
    for (std::size_t p = 0; p < dims; ++p) {
      double const range = mx[p] - mn[p];
      double const limit = min_cell_len.empty() ? 0.0 : min_cell_len[p];
      if (levels > 1 && range > 0.0 && !(range < limit)) { seg[p] = range / static_cast<double>(levels); }
    }

    std::vector<std::uint32_t> cell(count * dims, 0);
    for (std::size_t k = 0; k < count; ++k) {
      for (std::size_t p = 0; p < dims; ++p) {
        if (seg[p] == 0.0) { continue; }
        auto const idx = static_cast<std::size_t>((points[k * dims + p] - mn[p]) / seg[p]);
        cell[k * dims + p] = static_cast<std::uint32_t>(std::min(idx, levels - 1));
      }
    }

    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto cell_of = [&](std::size_t k) { return std::span<std::uint32_t const>(cell.data() + k * dims, dims); };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      auto const ca = cell_of(a);
      auto const cb = cell_of(b);
      return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
    });

    BoxSet set;
    set.dims = dims;
    std::size_t box = 0;
    for (std::size_t pos = 0; pos < count; ++pos) {
      std::size_t const k = order[pos];
      bool const new_cell = pos == 0 || !std::ranges::equal(cell_of(order[pos - 1]), cell_of(k));
      if (new_cell && (pos == 0 || box + 1 < max_clusters)) {
        if (pos != 0) { ++box; }
        set.lo.insert(set.lo.end(), points.begin() + k * dims, points.begin() + (k + 1) * dims);
        set.hi.insert(set.hi.end(), points.begin() + k * dims, points.begin() + (k + 1) * dims);
        continue;
      }
      for (std::size_t p = 0; p < dims; ++p) {
        set.lo[box * dims + p] = std::min(set.lo[box * dims + p], points[k * dims + p]);
        set.hi[box * dims + p] = std::max(set.hi[box * dims + p], points[k * dims + p]);
      }
    }
    return set;
  }

  BoxSets build_box_sets(Series const& q, std::size_t window, ClusterParams const& params,
                         std::span<double const> value_range) {
    if (params.expansion == 0) { throw InvalidInput("build_box_sets: expansion must be >= 1"); }
    if (!(params.min_cell_frac > 0.0)) { throw InvalidInput("build_box_sets: min_cell_frac must be > 0"); }
    if (!value_range.empty() && value_range.size() != q.dims()) {
      throw InvalidInput("build_box_sets: value_range must have one entry per dimension");
    }

    std::vector<double> range;
    if (value_range.empty()) {
      range = tcdtw::value_range(std::span<Series const>(&q, 1));
    } else {
      range.assign(value_range.begin(), value_range.end());
    }
    std::vector<double> min_cell(range.size());
    for (std::size_t p = 0; p < range.size(); ++p) { min_cell[p] = params.min_cell_frac * range[p]; }

    BoxSets sets;
    sets.length = q.length();
    sets.dims = q.dims();
    sets.window = std::min(window, q.length() - 1);
    sets.expansion = params.expansion;
    std::size_t const n = sets.length;
    std::size_t const w = sets.window;
    std::size_t const groups = (n + params.expansion - 1) / params.expansion;
    sets.groups.reserve(groups);
    for (std::size_t g = 0; g < groups; ++g) {
      std::size_t const start = g * params.expansion;
      std::size_t const first = start > w ? start - w : 0;
      std::size_t const last = std::min(n - 1, start + w + params.expansion - 1);
      auto pts = q.values().subspan(first * q.dims(), (last - first + 1) * q.dims());
      BoxSet set = quantize_cluster(pts, q.dims(), params.levels, params.max_clusters, min_cell);
      set.first = first;
      set.last = last;
      sets.groups.push_back(std::move(set));
    }
    return sets;
  }

  double box_distance(double const* x, BoxSet const& set, std::size_t k) noexcept {
    std::size_t const dims = set.dims;
    double const* lo = set.lo.data() + k * dims;
    double const* hi = set.hi.data() + k * dims;
    double acc = 0.0;
    for (std::size_t p = 0; p < dims; ++p) {
      double dev = 0.0;
      if (x[p] > hi[p]) {
        dev = x[p] - hi[p];
      } else if (x[p] < lo[p]) {
        dev = lo[p] - x[p];
      }
      acc += dev * dev;
    }
    return std::sqrt(acc);
  }

  BoundResult lb_pc(Series const& c, BoxSets const& boxes, double abandon_above) {
    if (c.length() != boxes.length || c.dims() != boxes.dims) {
      throw InvalidInput("lb_pc: candidate shape does not match the box sets");
    }
    BoundResult r;
    std::size_t const dims = c.dims();
    for (std::size_t i = 0; i < boxes.length; ++i) {
      BoxSet const& set = boxes.for_index(i);
      double const* x = c.data() + i * dims;
      double best = kInfinity;
      for (std::size_t k = 0; k < set.size() && best > 0.0; ++k) {
        best = std::min(best, box_distance(x, set, k));
        r.ops += dims;
      }
      r.value += best;
      if (r.value > abandon_above) {
        r.abandoned = true;
        return r;
      }
    }
    return r;
  }

} // namespace tcdtw
