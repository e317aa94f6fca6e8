#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "geosketch/errors.hpp"

namespace geosketch {

// A closed interval [lo, hi] on the real line.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double length() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

// Axis-parallel closed box; d = sides.size().
struct HyperRect {
    std::vector<Interval> sides;

    int dim() const { return static_cast<int>(sides.size()); }

    double volume() const {
        double v = 1.0;
        for (const auto& s : sides) v *= s.length();
        return v;
    }

    bool contains(const std::vector<double>& p) const {
        for (std::size_t a = 0; a < sides.size(); ++a)
            if (!sides[a].contains(p[a])) return false;
        return true;
    }
};

enum class Color { Red, Blue, None };

struct LabeledPoint {
    double x = 0.0;
    Color color = Color::None;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

// Constraint {p : normal·p <= offset}; normal is kept unit length.
struct Halfplane {
    Vec2 normal{1.0, 0.0};
    double offset = 0.0;

    bool contains(Vec2 p, double tol = 0.0) const { return dot(normal, p) <= offset + tol; }
};

inline Halfplane make_halfplane(Vec2 n, double c) {
    double len = norm(n);
    if (len < 1e-12) throw Error(ErrorKind::Data, "halfplane normal has zero length");
    return Halfplane{{n.x / len, n.y / len}, c / len};
}

}  // namespace geosketch
