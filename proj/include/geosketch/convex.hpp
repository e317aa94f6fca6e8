#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geosketch/geometry.hpp"

namespace geosketch {

// Counter-clockwise vertex list. Empty means infeasible; one or two vertices
// are legal degenerate bodies (point, segment). Never unbounded here: every
// construction path clips against the bounding body or a spanning direction
// set.
class ConvexPolygon {
public:
    ConvexPolygon() = default;
    explicit ConvexPolygon(std::vector<Vec2> vertices) : vs_(std::move(vertices)) {}

    const std::vector<Vec2>& vertices() const { return vs_; }
    bool empty() const { return vs_.empty(); }
    std::size_t size() const { return vs_.size(); }
    std::size_t edge_count() const { return vs_.size() >= 3 ? vs_.size() : (vs_.size() == 2 ? 1 : 0); }

    bool contains(Vec2 p, double tol = 1e-9) const;
    double support(Vec2 dir) const;  // max dir·v over vertices
    double area() const;
    // Distance from an interior point to the boundary (0 for degenerate or
    // exterior points).
    double boundary_distance(Vec2 p) const;

    // Merge near-duplicate vertices and drop collinear ones (tol 1e-9).
    void normalize();

private:
    std::vector<Vec2> vs_;
};

double point_to_polygon_distance(Vec2 p, const ConvexPolygon& poly);

// Keep the part of poly satisfying h (Sutherland-Hodgman, one halfplane).
ConvexPolygon clip(const ConvexPolygon& poly, const Halfplane& h);

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b);

// Bounding body B: regular 64-gon circumscribing the unit disk.
const std::vector<Halfplane>& bounding_body_constraints();
const ConvexPolygon& bounding_body_polygon();
double bounding_body_radius();  // circumradius 1/cos(pi/64)

// Exact intersection of the constraints, clipped to B. Empty result = infeasible.
ConvexPolygon halfplane_intersection(const std::vector<Halfplane>& constraints);

// Outer approximation from supporting halfplanes at ceil(2*pi/sqrt(8*tol)) + 1
// evenly spaced directions; superset of poly with Hausdorff distance <= tol.
ConvexPolygon dudley_outer_approx(const ConvexPolygon& poly, double tol);

std::size_t dudley_direction_count(double tol);

// Support-sampled Hausdorff distance refined with exact vertex-to-body
// distances; exact for nested convex polygons.
double hausdorff_distance(const ConvexPolygon& p, const ConvexPolygon& q, int ndirs);

struct RankedCell {
    ConvexPolygon poly;
    int rank = 0;
    std::uint64_t age = 0;
};

enum class Membership { Inside, Outside, Unknown };

struct LpSolution {
    Vec2 point;
    double value = 0.0;
};

// Merge-and-reduce halfplane sketch: cells carry distinct ranks; two cells of
// rank r merge into a Dudley approximation at tolerance eps/(2(r+1)^2). After
// n insertions K lies inside the intersection of all cells, at Hausdorff
// distance at most eps.
class ConvexStreamSketch {
public:
    explicit ConvexStreamSketch(double eps);

    void insert(const Halfplane& h);
    ConvexPolygon query() const;  // K' = intersection of all cell polygons

    LpSolution lp_maximize(Vec2 objective, bool feasible) const;
    Membership membership_test(Vec2 q) const;

    double epsilon() const { return eps_; }
    std::size_t insertions() const { return inserted_; }
    const std::vector<RankedCell>& cells() const { return cells_; }
    // Dudley facets only; B's 64 constraints are excluded by contract.
    std::size_t facet_counter() const;

private:
    double eps_;
    std::uint64_t inserted_ = 0;
    std::uint64_t next_age_ = 0;
    std::vector<RankedCell> cells_;

    double merge_tolerance(int rank) const;  // f(r) = eps/(2 r^2), f(0) = 0
};

}  // namespace geosketch
