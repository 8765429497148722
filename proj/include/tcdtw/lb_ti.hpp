#pragma once

#include "tcdtw/core.hpp"

#include <functional>
#include <vector>

namespace tcdtw {

  /// d(s_{i-1}, s_i) for i = 1..n-1. Computed once per series and shared across every pairing.
  std::vector<double> step_distances(Series const& s);

  /// Adjacent-point distances of one query and one candidate. Views into per-series step vectors.
  struct NeighborDistances {
    std::span<double const> query_steps;
    /// May be empty for the Top and TipTop variants, which never extend the top slot by triangle.
    std::span<double const> candidate_steps;
  };

  /// Lower and upper bound of one query/candidate point distance.
  struct BoundPair {
    double lower = 0.0;
    double upper = 0.0;
  };

  /// Relative slack applied by every triangle step. Rounded distances can make L - s exceed the rounded
  /// true distance by a few ulps when the triangle is tight (always possible in one dimension), so each
  /// step lowers L and raises U by this fraction of the magnitudes involved. Covers D up to several
  /// thousand dimensions.
  inline constexpr double kTriangleSlack = 0x1p-40;

  /// Triangle step shared by both slot moves: max(L - s, s - U, 0) and U + s, rounded outward.
  [[nodiscard]] inline BoundPair triangle_step(BoundPair slot, double step) noexcept {
    double const slack = kTriangleSlack * (slot.lower + slot.upper + step);
    return {std::max(std::max(slot.lower - step, step - slot.upper) - slack, 0.0),
            (slot.upper + step) * (1.0 + kTriangleSlack)};
  }

  /// Moves a slot from q_{i-1} to q_i through the triangle (q_{i-1}, q_i, c_j).
  /// `step` is d(q_{i-1}, q_i). The lower bound is clamped at zero.
  [[nodiscard]] inline BoundPair ti_advance(BoundPair slot, double step) noexcept {
    return triangle_step(slot, step);
  }

  /// Derives the slot (q_i, c_{i+W}) from (q_i, c_{i+W-1}) through the triangle with c_{i+W}.
  /// `step` is d(c_{i+W-1}, c_{i+W}).
  [[nodiscard]] inline BoundPair ti_extend_top(BoundPair slot, double step) noexcept {
    return triangle_step(slot, step);
  }

  /// Called with (query index, candidate index, bounds) for every slot after it is set at row i.
  using SlotObserver = std::function<void(std::size_t, std::size_t, BoundPair)>;

  /// Triangle lower bound of dtw_banded(q, c, window).
  ///
  /// Row 0 holds true distances. Each following row advances the shared slots with ti_advance and
  /// obtains the new top slot (q_i, c_{i+W}) either by ti_extend_top (Basic, Tip) or as a true
  /// distance (Top, TipTop). Tip and TipTop replace every slot with true distances on rows where
  /// i % period == 0. The bound is the sum over candidate points of the smallest lower bound seen
  /// for that point across the rows of its window.
  ///
  /// Throws InvalidInput on shape mismatch, period == 0, or missing step distances.
  BoundResult lb_ti(Series const& q, Series const& c, std::size_t window, TiVariant variant, std::size_t period,
                    NeighborDistances nd, double abandon_above = kInfinity);

  /// lb_ti with a per-slot observer. Slower; meant for instrumentation.
  BoundResult lb_ti_traced(Series const& q, Series const& c, std::size_t window, TiVariant variant,
                           std::size_t period, NeighborDistances nd, SlotObserver const& observer,
                           double abandon_above = kInfinity);

} // namespace tcdtw
