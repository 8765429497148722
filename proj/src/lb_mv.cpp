#include "tcdtw/lb_mv.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace tcdtw {

  namespace {

    /// Monotone-deque sliding extremum over [i-w, i+w] for one dimension of a row-major buffer.
    template<typename Better>
    void sliding_extremum(double const* values, std::size_t n, std::size_t stride, std::size_t w,
                          double* out, Better better) {
      std::deque<std::size_t> dq;
      std::size_t next = 0; // next index to push
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t const hi = std::min(n - 1, i + w);
        while (next <= hi) {
          double const v = values[next * stride];
          while (!dq.empty() && !better(values[dq.back() * stride], v)) { dq.pop_back(); }
          dq.push_back(next);
          ++next;
        }
        std::size_t const lo = i > w ? i - w : 0;
        while (dq.front() < lo) { dq.pop_front(); }
        out[i * stride] = values[dq.front() * stride];
      }
    }

  } // namespace

  Envelope build_envelope(Series const& q, std::size_t window) {
    Envelope env;
    env.length = q.length();
    env.dims = q.dims();
    env.window = std::min(window, q.length() - 1);
    env.upper.resize(q.values().size());
    env.lower.resize(q.values().size());
    for (std::size_t p = 0; p < env.dims; ++p) {
      sliding_extremum(q.data() + p, env.length, env.dims, env.window, env.upper.data() + p,
                       [](double kept, double incoming) { return kept > incoming; });
      sliding_extremum(q.data() + p, env.length, env.dims, env.window, env.lower.data() + p,
                       [](double kept, double incoming) { return kept < incoming; });
    }
    return env;
  }

  BoundResult lb_mv(Series const& c, Envelope const& env, double abandon_above) {
    if (c.length() != env.length || c.dims() != env.dims) {
      throw InvalidInput("lb_mv: candidate shape does not match the envelope");
    }
    std::size_t const dims = env.dims;
    BoundResult r;
    double const* cd = c.data();
    double const* up = env.upper.data();
    double const* lo = env.lower.data();
    for (std::size_t i = 0; i < env.length; ++i) {
      double acc = 0.0;
      for (std::size_t p = 0; p < dims; ++p) {
        std::size_t const k = i * dims + p;
        double const x = cd[k];
        double dev = 0.0;
        if (x > up[k]) {
          dev = x - up[k];
        } else if (x < lo[k]) {
          dev = lo[k] - x;
        }
        acc += dev * dev;
      }
      r.value += std::sqrt(acc);
      r.ops += dims;
      if (r.value > abandon_above) {
        r.abandoned = true;
        return r;
      }
    }
    return r;
  }

  BoundResult lb_ad(Series const& q, Series const& c, std::size_t window, double abandon_above) {
    require_same_shape(q, c);
    std::size_t const n = q.length();
    std::size_t const dims = q.dims();
    std::size_t const w = std::min(window, n - 1);
    BoundResult r;
    // Each candidate point is matched to some query point of its window on every warping path.
    for (std::size_t j = 0; j < n; ++j) {
      std::size_t const ilo = j > w ? j - w : 0;
      std::size_t const ihi = std::min(n - 1, j + w);
      double best = kInfinity;
      for (std::size_t i = ilo; i <= ihi; ++i) {
        best = std::min(best, point_distance(q.data() + i * dims, c.data() + j * dims, dims));
      }
      r.value += best;
      r.ops += (ihi - ilo + 1) * dims;
      if (r.value > abandon_above) {
        r.abandoned = true;
        return r;
      }
    }
    return r;
  }

} // namespace tcdtw
