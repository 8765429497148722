#include "tcdtw/lb_ti.hpp"

#include <algorithm>

namespace tcdtw {

  std::vector<double> step_distances(Series const& s) {
    std::vector<double> steps;
    if (s.length() < 2) { return steps; }
    steps.resize(s.length() - 1);
    for (std::size_t i = 1; i < s.length(); ++i) {
      steps[i - 1] = point_distance(s.data() + (i - 1) * s.dims(), s.data() + i * s.dims(), s.dims());
    }
    return steps;
  }

  namespace {

    struct NoObserver {
      void operator()(std::size_t, std::size_t, BoundPair) const noexcept {}
    };

    bool uses_true_top(TiVariant v) noexcept { return v == TiVariant::Top || v == TiVariant::TipTop; }
    bool uses_refresh(TiVariant v) noexcept { return v == TiVariant::Tip || v == TiVariant::TipTop; }

    void validate(Series const& q, Series const& c, TiVariant variant, std::size_t period, NeighborDistances nd) {
      require_same_shape(q, c);
      if (period == 0) { throw InvalidInput("lb_ti: period must be >= 1"); }
      std::size_t const steps = q.length() - 1;
      if (nd.query_steps.size() != steps) {
        throw InvalidInput("lb_ti: query step distances have the wrong length");
      }
      if (!uses_true_top(variant) && nd.candidate_steps.size() != steps) {
        throw InvalidInput("lb_ti: candidate step distances are required for this variant");
      }
    }

    template<typename Observer>
    BoundResult triangle_bound(Series const& q, Series const& c, std::size_t window, TiVariant variant,
                               std::size_t period, NeighborDistances nd, Observer const& observe,
                               double abandon_above) {
      std::size_t const n = q.length();
      std::size_t const dims = q.dims();
      std::size_t const w = std::min(window, n - 1);
      std::size_t const cap = 2 * w + 1;
      double const* qd = q.data();
      double const* cd = c.data();
      bool const true_top = uses_true_top(variant);
      bool const refresh = uses_refresh(variant);

      // Slots of the current row live in a ring indexed by candidate index modulo 2w+1.
      thread_local std::vector<BoundPair> ring;
      thread_local std::vector<double> best;
      ring.assign(cap, BoundPair{});
      best.assign(n, kInfinity);

      BoundResult r;
      auto exact = [&](std::size_t i, std::size_t j) {
        double const d = point_distance(qd + i * dims, cd + j * dims, dims);
        r.ops += dims;
        return BoundPair{d, d};
      };
      auto set = [&](std::size_t i, std::size_t j, BoundPair bp) {
        ring[j % cap] = bp;
        best[j] = std::min(best[j], bp.lower);
        observe(i, j, bp);
      };

      // Candidate j is final once row j + w has been processed.
      std::size_t finalized = 0;
      auto finalize_through = [&](std::size_t last) {
        for (; finalized <= last && finalized < n; ++finalized) { r.value += best[finalized]; }
        return r.value > abandon_above;
      };

      for (std::size_t j = 0; j <= w; ++j) { set(0, j, exact(0, j)); }
      if (w == 0 && finalize_through(0)) {
        r.abandoned = true;
        return r;
      }

      for (std::size_t i = 1; i < n; ++i) {
        std::size_t const lo = i > w ? i - w : 0;
        std::size_t const hi = std::min(n - 1, i + w);
        if (refresh && i % period == 0) {
          for (std::size_t j = lo; j <= hi; ++j) { set(i, j, exact(i, j)); }
        } else {
          double const step = nd.query_steps[i - 1];
          std::size_t const prev_hi = std::min(n - 1, i - 1 + w);
          // With w == 0 the slot below the new top is the one leaving the window.
          BoundPair below_top{};
          if (w == 0) { below_top = ti_advance(ring[(i - 1) % cap], step); }
          for (std::size_t j = lo; j <= prev_hi; ++j) {
            set(i, j, ti_advance(ring[j % cap], step));
          }
          r.ops += prev_hi + 1 - lo;
          if (hi > prev_hi) {
            if (true_top) {
              set(i, hi, exact(i, hi));
            } else {
              if (w > 0) { below_top = ring[(hi - 1) % cap]; }
              set(i, hi, ti_extend_top(below_top, nd.candidate_steps[hi - 1]));
              ++r.ops;
            }
          }
        }
        if (i >= w && finalize_through(i - w)) {
          r.abandoned = true;
          return r;
        }
      }
      if (finalize_through(n - 1)) { r.abandoned = true; }
      return r;
    }

  } // namespace

  BoundResult lb_ti(Series const& q, Series const& c, std::size_t window, TiVariant variant, std::size_t period,
                    NeighborDistances nd, double abandon_above) {
    validate(q, c, variant, period, nd);
    return triangle_bound(q, c, window, variant, period, nd, NoObserver{}, abandon_above);
  }

  BoundResult lb_ti_traced(Series const& q, Series const& c, std::size_t window, TiVariant variant,
                           std::size_t period, NeighborDistances nd, SlotObserver const& observer,
                           double abandon_above) {
    validate(q, c, variant, period, nd);
    return triangle_bound(q, c, window, variant, period, nd, observer, abandon_above);
  }

} // namespace tcdtw
