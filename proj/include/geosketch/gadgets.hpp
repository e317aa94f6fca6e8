#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "geosketch/geometry.hpp"

namespace geosketch {
namespace gadgets {

// bits as vector<int> of 0/1, Alice = x, Bob = y.
using Bits = std::vector<int>;

Bits parse_bits(const std::string& s);
bool disjoint(const Bits& x, const Bits& y);  // DISJ = 1 iff no common 1-bit

// Interval stream whose union length reveals DISJ(x, y): Alice emits
// [(i-1)/n, i/n] for her 1-bits, then Bob for his.
struct KleeDisjInstance {
    std::vector<Interval> stream;
    double union_length = 0.0;  // exact
    double alice_length = 0.0;  // l_A
    double bob_length = 0.0;    // l_B
    bool disj = false;
};
KleeDisjInstance gen_klee_disj(const Bits& x, const Bits& y);

// Point stream whose star discrepancy (closed-form variant) separates DISJ.
struct GeoDiscInstance {
    std::vector<double> stream;
    bool disj = false;
    double dstar = 0.0;        // exact value when disj = false
    double dstar_bound = 0.0;  // upper bound 1/(4n) when disj = true
};
GeoDiscInstance gen_geodisc_disj(const Bits& x, const Bits& y);

// Labeled-point stream whose star color discrepancy separates DISJ.
struct ColorDiscInstance {
    std::vector<LabeledPoint> stream;
    bool disj = false;
    std::int64_t dcstar = 0;            // 3 when DISJ = 0, else 1
    double separation_threshold = 2.4;  // 12/5 for the (1-eps, 2(1+eps)) bracket, eps < 1/5
};
ColorDiscInstance gen_colordisc_disj(const Bits& x, const Bits& y);

// Chord halfplanes of the unit-diameter circle; the query point p_{2j} lies
// in K iff x_j = 1, and otherwise sits at distance sin^2(pi/(2n)) from K.
struct ConvexIndexInstance {
    std::vector<Halfplane> stream;
    Vec2 query;
    bool inside = false;
    double outside_distance = 0.0;  // sin^2(pi/(2n)) when inside = false
};
ConvexIndexInstance gen_convex_index(const Bits& x, std::size_t j);

}  // namespace gadgets
}  // namespace geosketch
