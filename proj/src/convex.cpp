#include "geosketch/convex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "geosketch/errors.hpp"

namespace geosketch {

namespace {

constexpr double kVertexTol = 1e-9;        // vertices closer than this merge
constexpr double kClipTol = 1e-12;         // side-of-line classification
constexpr double kDegenerateArea = 1e-14;  // below this a loop is a sliver
constexpr int kBoundingGon = 64;
const double kPi = std::acos(-1.0);

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= 0.0) return dist(p, a);
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return dist(p, a + ab * t);
}

Vec2 nearest_point_on_segment(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double len2 = dot(ab, ab);
    if (len2 <= 0.0) return a;
    double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return a + ab * t;
}

double signed_twice_area(const std::vector<Vec2>& vs) {
    double twice = 0.0;
    for (std::size_t i = 0; i < vs.size(); ++i) twice += cross(vs[i], vs[(i + 1) % vs.size()]);
    return twice;
}

}  // namespace

// --------------------------------------------------------------- polygon

bool ConvexPolygon::contains(Vec2 p, double tol) const {
    if (vs_.empty()) return false;
    if (vs_.size() == 1) return dist(p, vs_[0]) <= tol;
    if (vs_.size() == 2) return point_segment_distance(p, vs_[0], vs_[1]) <= tol;
    double twice = signed_twice_area(vs_);
    if (std::abs(twice) <= 2.0 * kDegenerateArea) {
        // Zero-area sliver: membership means sitting on one of its edges.
        for (std::size_t i = 0; i < vs_.size(); ++i)
            if (point_segment_distance(p, vs_[i], vs_[(i + 1) % vs_.size()]) <= tol) return true;
        return false;
    }
    double orient = twice > 0.0 ? 1.0 : -1.0;
    for (std::size_t i = 0; i < vs_.size(); ++i) {
        Vec2 a = vs_[i], b = vs_[(i + 1) % vs_.size()];
        Vec2 e = b - a;
        double len = norm(e);
        if (len <= 0.0) continue;
        // left of every directed edge = inside, CCW orientation
        if (orient * cross(e, p - a) < -tol * len) return false;
    }
    return true;
}

double ConvexPolygon::support(Vec2 dir) const {
    if (vs_.empty()) throw EmptyInput("support");
    double best = -std::numeric_limits<double>::infinity();
    for (const Vec2& v : vs_) best = std::max(best, dot(dir, v));
    return best;
}

double ConvexPolygon::area() const {
    if (vs_.size() < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < vs_.size(); ++i) {
        Vec2 a = vs_[i], b = vs_[(i + 1) % vs_.size()];
        twice += cross(a, b);
    }
    return std::abs(twice) / 2.0;
}

double ConvexPolygon::boundary_distance(Vec2 p) const {
    if (vs_.size() < 3) return 0.0;
    double twice = signed_twice_area(vs_);
    if (std::abs(twice) <= 2.0 * kDegenerateArea) return 0.0;
    double orient = twice > 0.0 ? 1.0 : -1.0;
    // For p inside an intersection of halfplanes the boundary distance is the
    // smallest facet slack.
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs_.size(); ++i) {
        Vec2 a = vs_[i], b = vs_[(i + 1) % vs_.size()];
        Vec2 e = b - a;
        double len = norm(e);
        if (len <= 0.0) continue;
        slack = std::min(slack, orient * cross(e, p - a) / len);
    }
    return std::max(slack, 0.0);
}

void ConvexPolygon::normalize() {
    if (vs_.size() < 2) return;
    std::vector<Vec2> merged;
    merged.reserve(vs_.size());
    for (const Vec2& v : vs_) {
        if (merged.empty() || dist(merged.back(), v) > kVertexTol) merged.push_back(v);
    }
    while (merged.size() >= 2 && dist(merged.front(), merged.back()) <= kVertexTol)
        merged.pop_back();
    // A zero-area loop canonicalizes to the segment between its farthest
    // vertices; dropping spike vertices blindly could lose an extreme point.
    if (merged.size() >= 3 && std::abs(signed_twice_area(merged)) <= 2.0 * kDegenerateArea) {
        std::size_t bi = 0, bj = 1;
        double best = -1.0;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            for (std::size_t j = i + 1; j < merged.size(); ++j) {
                double d = dist(merged[i], merged[j]);
                if (d > best) {
                    best = d;
                    bi = i;
                    bj = j;
                }
            }
        }
        vs_ = best <= kVertexTol ? std::vector<Vec2>{merged[bi]}
                                 : std::vector<Vec2>{merged[bi], merged[bj]};
        return;
    }
    // Drop near-collinear vertices, spikes included: a micro-spike's reversed
    // edge would later act as an inverted clipper halfplane.
    bool changed = true;
    while (changed && merged.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < merged.size(); ++i) {
            Vec2 prev = merged[(i + merged.size() - 1) % merged.size()];
            Vec2 cur = merged[i];
            Vec2 next = merged[(i + 1) % merged.size()];
            if (std::abs(cross(cur - prev, next - cur)) <= kVertexTol) {
                merged.erase(merged.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    vs_ = std::move(merged);
}

double point_to_polygon_distance(Vec2 p, const ConvexPolygon& poly) {
    const auto& vs = poly.vertices();
    if (vs.empty()) throw EmptyInput("point_to_polygon_distance");
    if (vs.size() == 1) return dist(p, vs[0]);
    if (vs.size() >= 3 && poly.contains(p, 0.0)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vs.size(); ++i)
        best = std::min(best, point_segment_distance(p, vs[i], vs[(i + 1) % vs.size()]));
    return best;
}

namespace {

// Closest boundary point to p (p itself when strictly inside).
Vec2 nearest_point_on_polygon(Vec2 p, const ConvexPolygon& poly) {
    const auto& vs = poly.vertices();
    if (vs.size() == 1) return vs[0];
    double best = std::numeric_limits<double>::infinity();
    Vec2 arg = vs[0];
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec2 cand = nearest_point_on_segment(p, vs[i], vs[(i + 1) % vs.size()]);
        double d = dist(p, cand);
        if (d < best) {
            best = d;
            arg = cand;
        }
    }
    return arg;
}

}  // namespace

// ------------------------------------------------------------------ clip

ConvexPolygon clip(const ConvexPolygon& poly, const Halfplane& h) {
    const auto& vs = poly.vertices();
    if (vs.empty()) return poly;
    auto side = [&](Vec2 v) { return dot(h.normal, v) - h.offset; };
    if (vs.size() == 1) return side(vs[0]) <= kClipTol ? poly : ConvexPolygon{};
    if (vs.size() == 2) {
        double sa = side(vs[0]), sb = side(vs[1]);
        bool ia = sa <= kClipTol, ib = sb <= kClipTol;
        if (ia && ib) return poly;
        if (!ia && !ib) return ConvexPolygon{};
        double t = sa / (sa - sb);
        Vec2 m = vs[0] + (vs[1] - vs[0]) * t;
        return ConvexPolygon{ia ? std::vector<Vec2>{vs[0], m} : std::vector<Vec2>{m, vs[1]}};
    }
    std::vector<Vec2> out;
    out.reserve(vs.size() + 2);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec2 cur = vs[i], nxt = vs[(i + 1) % vs.size()];
        double sc = side(cur), sn = side(nxt);
        bool ic = sc <= kClipTol, in = sn <= kClipTol;
        if (ic) out.push_back(cur);
        if (ic != in) {
            double t = sc / (sc - sn);
            out.push_back(cur + (nxt - cur) * t);
        }
    }
    ConvexPolygon result{std::move(out)};
    result.normalize();
    return result;
}

namespace {

std::vector<Halfplane> edge_halfplanes(const ConvexPolygon& poly) {
    const auto& vs = poly.vertices();
    std::vector<Halfplane> hs;
    hs.reserve(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Vec2 a = vs[i], b = vs[(i + 1) % vs.size()];
        Vec2 e = b - a;
        double len = norm(e);
        if (len <= kVertexTol) continue;
        Vec2 n{e.y / len, -e.x / len};  // outward for CCW
        Halfplane h{n, dot(n, a)};
        // A residual spike edge faces the wrong way; using it as a clipper
        // would empty the body. Only edges supporting the whole vertex set
        // qualify.
        bool supporting = true;
        for (const Vec2& v : vs) {
            if (dot(n, v) > h.offset + 1e-7) {
                supporting = false;
                break;
            }
        }
        if (supporting) hs.push_back(h);
    }
    return hs;
}

ConvexPolygon intersect_degenerate(const ConvexPolygon& a, const ConvexPolygon& b) {
    // Both bodies are points or segments.
    const auto& va = a.vertices();
    const auto& vb = b.vertices();
    if (va.size() == 1) return b.contains(va[0], kVertexTol) ? a : ConvexPolygon{};
    if (vb.size() == 1) return a.contains(vb[0], kVertexTol) ? b : ConvexPolygon{};
    Vec2 p = va[0], q = va[1], r = vb[0], s = vb[1];
    Vec2 d1 = q - p, d2 = s - r;
    double den = cross(d1, d2);
    if (std::abs(den) > kVertexTol) {
        double t = cross(r - p, d2) / den;
        double u = cross(r - p, d1) / den;
        if (t >= -kVertexTol && t <= 1.0 + kVertexTol && u >= -kVertexTol && u <= 1.0 + kVertexTol)
            return ConvexPolygon{{p + d1 * t}};
        return ConvexPolygon{};
    }
    // Parallel: overlap only if collinear.
    if (point_segment_distance(r, p, q) > kVertexTol && point_segment_distance(s, p, q) > kVertexTol)
        return ConvexPolygon{};
    double len2 = dot(d1, d1);
    if (len2 <= 0.0) return b.contains(p, kVertexTol) ? a : ConvexPolygon{};
    double t0 = dot(r - p, d1) / len2, t1 = dot(s - p, d1) / len2;
    if (t0 > t1) std::swap(t0, t1);
    double lo = std::max(0.0, t0), hi = std::min(1.0, t1);
    if (lo > hi + kVertexTol) return ConvexPolygon{};
    Vec2 u = p + d1 * lo, v = p + d1 * hi;
    if (dist(u, v) <= kVertexTol) return ConvexPolygon{{u}};
    return ConvexPolygon{{u, v}};
}

}  // namespace

ConvexPolygon intersect(const ConvexPolygon& a, const ConvexPolygon& b) {
    if (a.empty() || b.empty()) return ConvexPolygon{};
    if (b.size() < 3 && a.size() >= 3) return intersect(b, a);
    if (b.size() < 3) return intersect_degenerate(a, b);
    ConvexPolygon result = a;
    for (const Halfplane& h : edge_halfplanes(b)) {
        result = clip(result, h);
        if (result.empty()) return result;
    }
    result.normalize();
    return result;
}

// --------------------------------------------------------- bounding body

// Tangent lines sit at half-step angles so that a vertex lies on the
// positive x-axis at the circumradius.
const std::vector<Halfplane>& bounding_body_constraints() {
    static const std::vector<Halfplane> hs = [] {
        std::vector<Halfplane> out;
        out.reserve(kBoundingGon);
        for (int k = 0; k < kBoundingGon; ++k) {
            double th = 2.0 * kPi * (k + 0.5) / kBoundingGon;
            out.push_back(Halfplane{{std::cos(th), std::sin(th)}, 1.0});
        }
        return out;
    }();
    return hs;
}

double bounding_body_radius() {
    static const double r = 1.0 / std::cos(kPi / kBoundingGon);
    return r;
}

const ConvexPolygon& bounding_body_polygon() {
    static const ConvexPolygon poly = [] {
        std::vector<Vec2> vs;
        vs.reserve(kBoundingGon);
        double r = bounding_body_radius();
        for (int k = 0; k < kBoundingGon; ++k) {
            double th = 2.0 * kPi * k / kBoundingGon;
            vs.push_back({r * std::cos(th), r * std::sin(th)});
        }
        return ConvexPolygon{std::move(vs)};
    }();
    return poly;
}

ConvexPolygon halfplane_intersection(const std::vector<Halfplane>& constraints) {
    ConvexPolygon result = bounding_body_polygon();
    for (const Halfplane& h : constraints) {
        result = clip(result, h);
        if (result.empty()) break;
    }
    return result;
}

// ---------------------------------------------------------------- dudley

std::size_t dudley_direction_count(double tol) {
    double dtheta = std::sqrt(8.0 * tol);
    return static_cast<std::size_t>(std::ceil(2.0 * kPi / dtheta)) + 1;
}

ConvexPolygon dudley_outer_approx(const ConvexPolygon& poly, double tol) {
    if (poly.empty()) throw EmptyInput("dudley_outer_approx");
    if (!(tol > 0.0 && tol < 1.0)) throw UsageError("dudley tolerance must lie in (0,1)");
    std::size_t m = dudley_direction_count(tol);
    ConvexPolygon result{{{-4.0, -4.0}, {4.0, -4.0}, {4.0, 4.0}, {-4.0, 4.0}}};
    for (std::size_t j = 0; j < m; ++j) {
        double th = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
        Vec2 u{std::cos(th), std::sin(th)};
        result = clip(result, Halfplane{u, poly.support(u)});
    }
    result.normalize();

    // Evenly spaced support directions overshoot near flat stretches of the
    // body (the wedge excess grows with the chord between adjacent support
    // points, not with the spacing squared). Clip any offending vertex with
    // the supporting line at its nearest body point until every vertex is
    // within tol; max vertex distance is exactly d_H for nested convex sets.
    for (int round = 0; round < 512; ++round) {
        double worst = 0.0;
        Vec2 bad{};
        for (const Vec2& v : result.vertices()) {
            double d = point_to_polygon_distance(v, poly);
            if (d > worst) {
                worst = d;
                bad = v;
            }
        }
        if (worst <= tol || result.empty()) return result;
        Vec2 near = nearest_point_on_polygon(bad, poly);
        Vec2 dir = bad - near;
        double len = norm(dir);
        if (len <= kVertexTol) return result;
        Vec2 u{dir.x / len, dir.y / len};
        result = clip(result, Halfplane{u, dot(u, near)});
        result.normalize();
    }
    throw Error(ErrorKind::Data, "internal: outer approximation did not reach tolerance");
}

// ------------------------------------------------------------- hausdorff

double hausdorff_distance(const ConvexPolygon& p, const ConvexPolygon& q, int ndirs) {
    if (p.empty() || q.empty()) throw EmptyInput("hausdorff_distance");
    double best = 0.0;
    for (int j = 0; j < ndirs; ++j) {
        double th = 2.0 * kPi * j / ndirs;
        Vec2 u{std::cos(th), std::sin(th)};
        best = std::max(best, std::abs(p.support(u) - q.support(u)));
    }
    for (const Vec2& v : q.vertices()) best = std::max(best, point_to_polygon_distance(v, p));
    for (const Vec2& v : p.vertices()) best = std::max(best, point_to_polygon_distance(v, q));
    return best;
}

// ---------------------------------------------------------------- sketch

ConvexStreamSketch::ConvexStreamSketch(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("sketch epsilon must lie in (0,1)");
}

double ConvexStreamSketch::merge_tolerance(int rank) const {
    if (rank == 0) return 0.0;
    return eps_ / (2.0 * static_cast<double>(rank) * static_cast<double>(rank));
}

void ConvexStreamSketch::insert(const Halfplane& h) {
    ++inserted_;
    ConvexPolygon cell = clip(bounding_body_polygon(), h);
    cells_.push_back(RankedCell{std::move(cell), 0, next_age_++});

    // Restore distinct ranks bottom-up, merging the two oldest at each rank.
    for (;;) {
        int dup_rank = -1;
        for (const auto& c : cells_) {
            int count = 0;
            for (const auto& o : cells_)
                if (o.rank == c.rank) ++count;
            if (count >= 2 && (dup_rank < 0 || c.rank < dup_rank)) dup_rank = c.rank;
        }
        if (dup_rank < 0) break;
        std::size_t ia = cells_.size(), ib = cells_.size();
        for (std::size_t i = 0; i < cells_.size(); ++i) {
            if (cells_[i].rank != dup_rank) continue;
            if (ia == cells_.size() || cells_[i].age < cells_[ia].age) {
                ib = ia;
                ia = i;
            } else if (ib == cells_.size() || cells_[i].age < cells_[ib].age) {
                ib = i;
            }
        }
        RankedCell merged;
        merged.rank = dup_rank + 1;
        merged.age = std::min(cells_[ia].age, cells_[ib].age);
        ConvexPolygon body = intersect(cells_[ia].poly, cells_[ib].poly);
        if (!body.empty()) merged.poly = dudley_outer_approx(body, merge_tolerance(dup_rank + 1));
        if (ia < ib) std::swap(ia, ib);
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(ia));
        cells_.erase(cells_.begin() + static_cast<std::ptrdiff_t>(ib));
        cells_.push_back(std::move(merged));
    }
}

ConvexPolygon ConvexStreamSketch::query() const {
    if (cells_.empty()) throw EmptySketch();
    std::vector<const RankedCell*> ordered;
    ordered.reserve(cells_.size());
    for (const auto& c : cells_) ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const RankedCell* a, const RankedCell* b) { return a->age < b->age; });
    ConvexPolygon result = ordered.front()->poly;
    for (std::size_t i = 1; i < ordered.size() && !result.empty(); ++i)
        result = intersect(result, ordered[i]->poly);
    return result;
}

std::size_t ConvexStreamSketch::facet_counter() const {
    std::size_t total = 0;
    for (const auto& c : cells_) total += (c.rank == 0) ? 1 : c.poly.edge_count();
    return total;
}

LpSolution ConvexStreamSketch::lp_maximize(Vec2 objective, bool feasible) const {
    double len = norm(objective);
    if (len < 1e-12) throw UsageError("objective must be a unit vector");
    Vec2 obj{objective.x / len, objective.y / len};

    ConvexPolygon body = query();
    if (body.empty()) throw Infeasible();
    if (feasible) {
        if (body.size() < 3) throw ErodedEmpty();
        ConvexPolygon eroded = body;
        for (Halfplane h : edge_halfplanes(body)) {
            h.offset -= eps_;
            eroded = clip(eroded, h);
            if (eroded.empty()) throw ErodedEmpty();
        }
        body = std::move(eroded);
    }
    LpSolution best{body.vertices().front(), dot(obj, body.vertices().front())};
    for (const Vec2& v : body.vertices()) {
        double val = dot(obj, v);
        if (val > best.value) best = LpSolution{v, val};
    }
    return best;
}

Membership ConvexStreamSketch::membership_test(Vec2 q) const {
    ConvexPolygon body = query();
    if (body.empty()) return Membership::Outside;
    // The 1e-9 slack keeps boundary vertices of K (which lie on K' faces up
    // to roundoff) from flipping to Outside.
    if (!body.contains(q, 1e-9)) return Membership::Outside;
    if (body.size() < 3) return Membership::Unknown;
    return body.boundary_distance(q) >= eps_ ? Membership::Inside : Membership::Unknown;
}

}  // namespace geosketch
