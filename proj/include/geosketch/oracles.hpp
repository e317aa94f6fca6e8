#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "geosketch/convex.hpp"
#include "geosketch/geometry.hpp"

namespace geosketch {
namespace oracles {

// Desk-scale guard: oracles refuse inputs above budget rather than degrade.
struct OracleBudget {
    std::size_t max_items = 5000;
    std::size_t max_cells = 10000000;

    // GEOSKETCH_ORACLE_BUDGET, when set, overrides both fields.
    static OracleBudget from_env();
};

// Exact union volume by sorted sweep (d=1) or coordinate compression (d=2,3).
double klee_exact(const std::vector<HyperRect>& rects, OracleBudget budget = {});

// Exact 1-D geometric discrepancy over the finite candidate family whose
// closure attains the supremum: closed [x_i,x_j], open gaps (x_i,x_j),
// boundary-touching [0,x_j) and (x_i,1], and [0,1].
double geo_disc_exact(const std::vector<double>& points, OracleBudget budget = {2000, 0});

// Sup-definition star discrepancy, 1/(2n) + max_i |x_i - (2i-1)/(2n)|.
double star_geo_disc_sup(const std::vector<double>& points);

struct ColorDiscResult {
    std::int64_t dc = 0;       // sup over intervals of |R(I) - B(I)|
    std::int64_t dc_star = 0;  // anchored variant, max over prefixes ending at a point
};

ColorDiscResult color_disc_exact(const std::vector<LabeledPoint>& points,
                                 OracleBudget budget = {2000, 0});

struct LpOracleResult {
    Vec2 point;
    double value = 0.0;
};

// Exact LP over the halfplane intersection clipped to the bounding body;
// implemented with its own clipping path, independent of module convex's
// sketch machinery.
LpOracleResult lp_exact(const std::vector<Halfplane>& constraints, Vec2 objective,
                        OracleBudget budget = {10000, 0});

// The exact feasible polygon behind lp_exact (for containment checks).
ConvexPolygon exact_intersection(const std::vector<Halfplane>& constraints,
                                 OracleBudget budget = {10000, 0});

// Exact covered-unit-cell count for integer-corner boxes in [0,N]^d.
std::int64_t grid_cover_exact(const std::vector<HyperRect>& rects, std::int64_t n_per_axis, int d,
                              OracleBudget budget = {});

}  // namespace oracles
}  // namespace geosketch
