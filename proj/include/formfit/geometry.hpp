#pragma once

#include <cmath>
#include <span>

namespace formfit {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

// sqrt of the explicit sum keeps results bit-reproducible across libms,
// unlike std::hypot.
inline double distance(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return std::sqrt(dx * dx + dy * dy);
}

/// Tight axis-aligned bounding box.
struct Bounds {
    double min_x = 0.0;
    double max_x = 0.0;
    double min_y = 0.0;
    double max_y = 0.0;

    double length() const { return max_x - min_x; }  // along the direction of play
    double width() const { return max_y - min_y; }
    double mid_x() const { return (min_x + max_x) / 2.0; }
    double mid_y() const { return (min_y + max_y) / 2.0; }

    void expand(Vec2 p) {
        if (p.x < min_x) min_x = p.x;
        if (p.x > max_x) max_x = p.x;
        if (p.y < min_y) min_y = p.y;
        if (p.y > max_y) max_y = p.y;
    }

    static Bounds of(std::span<const Vec2> points) {
        Bounds b{points.front().x, points.front().x, points.front().y, points.front().y};
        for (const Vec2& p : points.subspan(1)) b.expand(p);
        return b;
    }

    friend bool operator==(const Bounds&, const Bounds&) = default;
};

}  // namespace formfit
