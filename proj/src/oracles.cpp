#include "geosketch/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "geosketch/errors.hpp"

namespace geosketch {
namespace oracles {

OracleBudget OracleBudget::from_env() {
    OracleBudget b;
    if (const char* env = std::getenv("GEOSKETCH_ORACLE_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) {
            b.max_items = static_cast<std::size_t>(v);
            b.max_cells = static_cast<std::size_t>(v);
        }
    }
    return b;
}

namespace {

double klee_exact_1d(const std::vector<HyperRect>& rects) {
    std::vector<Interval> ivs;
    ivs.reserve(rects.size());
    for (const auto& r : rects) ivs.push_back(r.sides[0]);
    std::sort(ivs.begin(), ivs.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    double total = 0.0;
    double run_lo = 0.0, run_hi = -std::numeric_limits<double>::infinity();
    bool open = false;
    for (const auto& iv : ivs) {
        if (!open || iv.lo > run_hi) {
            if (open) total += run_hi - run_lo;
            run_lo = iv.lo;
            run_hi = iv.hi;
            open = true;
        } else {
            run_hi = std::max(run_hi, iv.hi);
        }
    }
    if (open) total += run_hi - run_lo;
    return total;
}

double klee_exact_compressed(const std::vector<HyperRect>& rects, int d, const OracleBudget& budget) {
    std::vector<std::vector<double>> cuts(d);
    for (const auto& r : rects) {
        for (int a = 0; a < d; ++a) {
            cuts[a].push_back(r.sides[a].lo);
            cuts[a].push_back(r.sides[a].hi);
        }
    }
    std::size_t cells = 1;
    for (int a = 0; a < d; ++a) {
        std::sort(cuts[a].begin(), cuts[a].end());
        cuts[a].erase(std::unique(cuts[a].begin(), cuts[a].end()), cuts[a].end());
        if (cuts[a].size() < 2) return 0.0;
        cells *= cuts[a].size() - 1;
    }
    if (budget.max_cells && cells > budget.max_cells)
        throw BudgetExceeded("klee_exact: " + std::to_string(cells) + " compressed cells over budget");

    std::vector<std::size_t> stride(d, 1);
    for (int a = 1; a < d; ++a) stride[a] = stride[a - 1] * (cuts[a - 1].size() - 1);
    std::vector<char> covered(cells, 0);

    std::vector<std::size_t> lo(d), hi(d), idx(d);
    for (const auto& r : rects) {
        bool empty = false;
        for (int a = 0; a < d; ++a) {
            lo[a] = static_cast<std::size_t>(std::lower_bound(cuts[a].begin(), cuts[a].end(),
                                                              r.sides[a].lo) -
                                             cuts[a].begin());
            hi[a] = static_cast<std::size_t>(std::lower_bound(cuts[a].begin(), cuts[a].end(),
                                                              r.sides[a].hi) -
                                             cuts[a].begin());
            if (lo[a] >= hi[a]) empty = true;
        }
        if (empty) continue;
        idx = lo;
        while (true) {
            std::size_t c = 0;
            for (int a = 0; a < d; ++a) c += idx[a] * stride[a];
            covered[c] = 1;
            int a = 0;
            while (a < d) {
                if (++idx[a] < hi[a]) break;
                idx[a] = lo[a];
                ++a;
            }
            if (a == d) break;
        }
    }

    double total = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        if (!covered[c]) continue;
        double vol = 1.0;
        std::size_t rem = c;
        for (int a = 0; a < d; ++a) {
            std::size_t j = rem % (cuts[a].size() - 1);
            rem /= cuts[a].size() - 1;
            vol *= cuts[a][j + 1] - cuts[a][j];
        }
        total += vol;
    }
    return total;
}

}  // namespace

double klee_exact(const std::vector<HyperRect>& rects, OracleBudget budget) {
    if (rects.empty()) return 0.0;
    int d = rects.front().dim();
    for (const auto& r : rects)
        if (r.dim() != d) throw DimensionMismatch(d, r.dim());
    if (d < 1 || d > 3) throw BudgetExceeded("klee_exact supports d in {1,2,3}");
    if (d == 1) {
        if (budget.max_items && rects.size() > budget.max_items)
            throw BudgetExceeded("klee_exact: item count over budget");
        return klee_exact_1d(rects);
    }
    return klee_exact_compressed(rects, d, budget);
}

double geo_disc_exact(const std::vector<double>& points, OracleBudget budget) {
    if (points.empty()) throw EmptyInput("geo_disc_exact");
    if (budget.max_items && points.size() > budget.max_items)
        throw BudgetExceeded("geo_disc_exact: item count over budget");
    std::vector<double> xs = points;
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    const double dn = static_cast<double>(n);

    // first[i]/last[i]: index range sharing xs[i]'s coordinate, so closed and
    // open candidates count duplicates correctly.
    std::vector<std::size_t> first(n), last(n);
    for (std::size_t i = 0; i < n; ++i) first[i] = (i > 0 && xs[i] == xs[i - 1]) ? first[i - 1] : i;
    for (std::size_t i = n; i-- > 0;) last[i] = (i + 1 < n && xs[i] == xs[i + 1]) ? last[i + 1] : i;

    double best = 0.0;  // the [0,1] candidate contributes |1 - n/n| = 0
    for (std::size_t j = 0; j < n; ++j) {
        if (j != first[j]) continue;  // one representative per distinct value
        // boundary-touching [0, x_j) and (x_j, 1]
        best = std::max(best, std::abs(xs[j] - static_cast<double>(first[j]) / dn));
        best = std::max(best, std::abs((1.0 - xs[j]) - static_cast<double>(n - 1 - last[j]) / dn));
        for (std::size_t i = 0; i <= j; ++i) {
            if (i != first[i]) continue;
            double len = xs[j] - xs[i];
            // closed [x_i, x_j]
            double closed_count = static_cast<double>(last[j] - first[i] + 1);
            best = std::max(best, std::abs(len - closed_count / dn));
            // open gap (x_i, x_j)
            if (last[i] + 1 <= first[j]) {
                double open_count = static_cast<double>(first[j] - last[i] - 1);
                best = std::max(best, std::abs(len - open_count / dn));
            }
        }
    }
    return best;
}

double star_geo_disc_sup(const std::vector<double>& points) {
    if (points.empty()) throw EmptyInput("star_geo_disc_sup");
    std::vector<double> xs = points;
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double best = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
        best = std::max(best, std::abs(xs[i] - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n)));
    return 1.0 / (2.0 * n) + best;
}

ColorDiscResult color_disc_exact(const std::vector<LabeledPoint>& points, OracleBudget budget) {
    if (points.empty()) throw EmptyInput("color_disc_exact");
    if (budget.max_items && points.size() > budget.max_items)
        throw BudgetExceeded("color_disc_exact: item count over budget");
    std::vector<LabeledPoint> ps = points;
    std::sort(ps.begin(), ps.end(),
              [](const LabeledPoint& a, const LabeledPoint& b) { return a.x < b.x; });

    // Collapse to distinct coordinates with inclusive prefix counts.
    std::vector<double> vals;
    std::vector<std::int64_t> pref_r{0}, pref_b{0};
    for (const auto& p : ps) {
        if (p.color == Color::None) throw Error(ErrorKind::Data, "color_disc_exact: unlabeled point");
        if (vals.empty() || p.x != vals.back()) {
            vals.push_back(p.x);
            pref_r.push_back(pref_r.back());
            pref_b.push_back(pref_b.back());
        }
        if (p.color == Color::Red)
            ++pref_r.back();
        else
            ++pref_b.back();
    }

    ColorDiscResult out;
    const std::size_t m = vals.size();
    for (std::size_t t = 1; t <= m; ++t) {
        out.dc_star = std::max(out.dc_star, std::abs((pref_r[t] - pref_b[t])));
        for (std::size_t s = 1; s <= t; ++s) {
            std::int64_t r = pref_r[t] - pref_r[s - 1];
            std::int64_t b = pref_b[t] - pref_b[s - 1];
            out.dc = std::max(out.dc, std::abs(r - b));
        }
    }
    return out;
}

namespace {

// Clipping written independently of module convex: parametric edge walk
// keeping the <= side.
std::vector<Vec2> oracle_clip(const std::vector<Vec2>& poly, Vec2 n, double c) {
    std::vector<Vec2> out;
    const std::size_t k = poly.size();
    out.reserve(k + 2);
    for (std::size_t i = 0; i < k; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % k];
        double sa = dot(n, a) - c, sb = dot(n, b) - c;
        if (sa <= 0.0) out.push_back(a);
        if ((sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb <= 0.0)) {
            double t = sa / (sa - sb);
            out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
        }
    }
    return out;
}

}  // namespace

ConvexPolygon exact_intersection(const std::vector<Halfplane>& constraints, OracleBudget budget) {
    if (budget.max_items && constraints.size() > budget.max_items)
        throw BudgetExceeded("exact_intersection: constraint count over budget");
    std::vector<Vec2> poly;
    for (const auto& v : bounding_body_polygon().vertices()) poly.push_back(v);
    for (const auto& h : constraints) {
        poly = oracle_clip(poly, h.normal, h.offset);
        if (poly.empty()) break;
    }
    ConvexPolygon out{std::move(poly)};
    out.normalize();
    return out;
}

LpOracleResult lp_exact(const std::vector<Halfplane>& constraints, Vec2 objective,
                        OracleBudget budget) {
    double len = norm(objective);
    if (len < 1e-12) throw UsageError("objective must be a unit vector");
    Vec2 obj{objective.x / len, objective.y / len};
    ConvexPolygon feas = exact_intersection(constraints, budget);
    if (feas.empty()) throw Infeasible();
    LpOracleResult best{feas.vertices().front(), dot(obj, feas.vertices().front())};
    for (const Vec2& v : feas.vertices()) {
        double val = dot(obj, v);
        if (val > best.value) best = LpOracleResult{v, val};
    }
    return best;
}

std::int64_t grid_cover_exact(const std::vector<HyperRect>& rects, std::int64_t n_per_axis, int d,
                              OracleBudget budget) {
    double cells_d = std::pow(static_cast<double>(n_per_axis), d);
    if (cells_d > static_cast<double>(1 << 24))
        throw UniverseTooLarge("grid universe N^d exceeds 2^24 cells");
    std::size_t cells = static_cast<std::size_t>(cells_d);
    if (budget.max_cells && cells > budget.max_cells)
        throw BudgetExceeded("grid_cover_exact: cell count over budget");
    std::vector<char> covered(cells, 0);
    std::vector<std::int64_t> lo(d), hi(d), idx(d);
    for (const auto& r : rects) {
        if (r.dim() != d) throw DimensionMismatch(d, r.dim());
        bool empty = false;
        for (int a = 0; a < d; ++a) {
            double l = r.sides[a].lo, h = r.sides[a].hi;
            if (std::floor(l) != l) throw NonIntegerCorner(l);
            if (std::floor(h) != h) throw NonIntegerCorner(h);
            lo[a] = static_cast<std::int64_t>(l);
            hi[a] = static_cast<std::int64_t>(h);
            if (lo[a] >= hi[a]) empty = true;
        }
        if (empty) continue;
        idx = lo;
        while (true) {
            std::size_t c = 0;
            for (int a = d - 1; a >= 0; --a)
                c = c * static_cast<std::size_t>(n_per_axis) + static_cast<std::size_t>(idx[a]);
            covered[c] = 1;
            int a = 0;
            while (a < d) {
                if (++idx[a] < hi[a]) break;
                idx[a] = lo[a];
                ++a;
            }
            if (a == d) break;
        }
    }
    std::int64_t count = 0;
    for (char c : covered) count += c;
    return count;
}

}  // namespace oracles
}  // namespace geosketch
