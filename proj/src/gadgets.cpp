#include "geosketch/gadgets.hpp"

#include <cmath>

#include "geosketch/errors.hpp"

namespace geosketch {
namespace gadgets {

namespace {

const double kPi = std::acos(-1.0);

void require_pair(const Bits& x, const Bits& y) {
    if (x.empty() || x.size() != y.size()) throw LengthMismatch();
}

}  // namespace

Bits parse_bits(const std::string& s) {
    Bits out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '0')
            out.push_back(0);
        else if (c == '1')
            out.push_back(1);
        else
            throw UsageError("bit vector must consist of 0/1 characters");
    }
    return out;
}

bool disjoint(const Bits& x, const Bits& y) {
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i)
        if (x[i] == 1 && y[i] == 1) return false;
    return true;
}

KleeDisjInstance gen_klee_disj(const Bits& x, const Bits& y) {
    require_pair(x, y);
    const double n = static_cast<double>(x.size());
    KleeDisjInstance out;
    out.disj = disjoint(x, y);
    int alice = 0, bob = 0, covered = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) {
            out.stream.push_back(Interval{static_cast<double>(i) / n, static_cast<double>(i + 1) / n});
            ++alice;
        }
    }
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i]) {
            out.stream.push_back(Interval{static_cast<double>(i) / n, static_cast<double>(i + 1) / n});
            ++bob;
        }
        if (x[i] || y[i]) ++covered;
    }
    out.alice_length = alice / n;
    out.bob_length = bob / n;
    out.union_length = covered / n;
    return out;
}

GeoDiscInstance gen_geodisc_disj(const Bits& x, const Bits& y) {
    require_pair(x, y);
    const double n = static_cast<double>(x.size());
    GeoDiscInstance out;
    out.disj = disjoint(x, y);
    for (std::size_t k = 0; k < x.size(); ++k) {
        double i = static_cast<double>(k + 1);
        double base = (4.0 * i - 3.0) / (4.0 * n);
        out.stream.push_back(x[k] ? base - 1.0 / (4.0 * n) : base + 1.0 / (4.0 * n));
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
        double i = static_cast<double>(k + 1);
        out.stream.push_back(y[k] ? (4.0 * i - 3.0) / (4.0 * n) - 1.0 / (8.0 * n)
                                  : (4.0 * i - 1.0) / (4.0 * n));
    }
    out.dstar = out.disj ? 0.0 : 1.0 / (2.0 * n) + 1.0 / (8.0 * n);
    out.dstar_bound = 1.0 / (4.0 * n);
    return out;
}

ColorDiscInstance gen_colordisc_disj(const Bits& x, const Bits& y) {
    require_pair(x, y);
    const double n = static_cast<double>(x.size());
    ColorDiscInstance out;
    out.disj = disjoint(x, y);
    for (std::size_t k = 0; k < x.size(); ++k) {
        double lo = static_cast<double>(k) / n;
        if (x[k]) {
            out.stream.push_back({lo + 1.0 / (7.0 * n), Color::Red});
            out.stream.push_back({static_cast<double>(k + 1) / n, Color::Blue});
        } else {
            out.stream.push_back({lo + 2.0 / (7.0 * n), Color::Blue});
            out.stream.push_back({static_cast<double>(k + 1) / n, Color::Red});
        }
    }
    for (std::size_t k = 0; k < y.size(); ++k) {
        if (!y[k]) continue;
        double lo = static_cast<double>(k) / n;
        out.stream.push_back({lo + 3.0 / (7.0 * n), Color::Red});
        out.stream.push_back({lo + 4.0 / (7.0 * n), Color::Red});
        out.stream.push_back({lo + 5.0 / (7.0 * n), Color::Blue});
        out.stream.push_back({lo + 6.0 / (7.0 * n), Color::Blue});
    }
    out.dcstar = out.disj ? 1 : 3;
    return out;
}

ConvexIndexInstance gen_convex_index(const Bits& x, std::size_t j) {
    if (x.empty()) throw LengthMismatch();
    const std::size_t n = x.size();
    if (n < 2) throw UsageError("convex-index gadget needs at least 2 bits");
    if (j < 1 || j > n) throw IndexOutOfRange(j, n);

    // 2n points evenly on the circle of diameter 1; p_{2n+1} wraps to p_1.
    auto point = [&](std::size_t k1) {  // 1-based, cyclic
        std::size_t k = (k1 - 1) % (2 * n);
        double th = kPi * static_cast<double>(k) / static_cast<double>(n);
        return Vec2{0.5 * std::cos(th), 0.5 * std::sin(th)};
    };
    // Chords traverse the circle counter-clockwise, so the interior is the
    // left side; the right normal gives the outward-facing constraint. This
    // also orients diameter chords correctly, where a contains-the-center
    // rule would be ambiguous.
    auto chord = [&](Vec2 a, Vec2 b) {
        Vec2 e = b - a;
        Vec2 nrm{e.y, -e.x};
        return make_halfplane(nrm, dot(nrm, a));
    };

    ConvexIndexInstance out;
    for (std::size_t i = 1; i <= n; ++i) {
        Vec2 a = point(2 * i - 1), m = point(2 * i), b = point(2 * i + 1);
        if (x[i - 1]) {
            out.stream.push_back(chord(a, m));
            out.stream.push_back(chord(m, b));
        } else {
            out.stream.push_back(chord(a, b));
        }
    }
    out.query = point(2 * j);
    out.inside = x[j - 1] == 1;
    double s = std::sin(kPi / (2.0 * static_cast<double>(n)));
    out.outside_distance = out.inside ? 0.0 : s * s;
    return out;
}

}  // namespace gadgets
}  // namespace geosketch
