#include "dcsim/geometry.hpp"

#include <algorithm>

namespace dcsim {

// Liang-Barsky clipping of the parametric segment a + t*(b-a), t in [0,1],
// against each slab. The segment crosses the interior iff the clipped
// parameter interval is non-degenerate, i.e. the segment spends positive
// length strictly inside. A degenerate interval (t_enter == t_exit) means the
// segment only grazes an edge or corner.
bool segment_crosses_interior(Position a, Position b, const Building& r) {
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    double t0 = 0.0;
    double t1 = 1.0;

    auto clip = [&](double p, double q) {
        // Moving by p per unit t against boundary with margin q.
        if (p == 0.0) return q >= 0.0;  // parallel: inside the slab or not
        double t = q / p;
        if (p < 0.0) {
            if (t > t1) return false;
            t0 = std::max(t0, t);
        } else {
            if (t < t0) return false;
            t1 = std::min(t1, t);
        }
        return t0 <= t1;
    };

    if (!clip(-dx, a.x - r.min_x)) return false;
    if (!clip(dx, r.max_x - a.x)) return false;
    if (!clip(-dy, a.y - r.min_y)) return false;
    if (!clip(dy, r.max_y - a.y)) return false;

    if (t1 <= t0) return false;

    // A segment sliding along a wall clips to a non-degenerate interval but
    // never enters the interior; probe the midpoint to reject it.
    double tm = 0.5 * (t0 + t1);
    double mx = a.x + tm * dx;
    double my = a.y + tm * dy;
    return mx > r.min_x && mx < r.max_x && my > r.min_y && my < r.max_y;
}

bool is_los(Position a, Position b, std::span<const Building> buildings) {
    for (const Building& r : buildings) {
        if (segment_crosses_interior(a, b, r)) return false;
    }
    return true;
}

}  // namespace dcsim
