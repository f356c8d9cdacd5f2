#pragma once

#include <cmath>
#include <span>

namespace dcsim {

struct Position {
    double x = 0;
    double y = 0;
};

inline double distance(Position a, Position b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

// Axis-aligned rectangular obstacle, corners (min_x, min_y)-(max_x, max_y).
struct Building {
    double min_x = 0;
    double min_y = 0;
    double max_x = 0;
    double max_y = 0;

    bool contains(Position p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
};

// True when segment a-b passes through the open interior of the rectangle.
// Touching an edge or a corner does not count as blockage.
bool segment_crosses_interior(Position a, Position b, const Building& r);

// Line of sight holds when no building interior intersects the segment.
bool is_los(Position a, Position b, std::span<const Building> buildings);

}  // namespace dcsim
