#include "geosketch/streams.hpp"

#include <cctype>
#include <sstream>

namespace geosketch {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_number(const std::string& tok, std::size_t lineno) {
    std::size_t used = 0;
    double v;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ParseError(lineno, "not a number: '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(lineno, "trailing junk in number: '" + tok + "'");
    return v;
}

void check_unit_range(double x, std::size_t lineno) {
    if (!(x >= 0.0 && x <= 1.0)) throw RangeError(lineno, "coordinate outside [0,1]");
}

}  // namespace

bool is_skippable_line(const std::string& line) {
    for (char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        return c == '#';
    }
    return true;
}

Interval parse_interval_line(const std::string& line, std::size_t lineno) {
    auto f = split_fields(line);
    if (f.size() != 2) throw ParseError(lineno, "expected 2 fields (lo hi)");
    Interval iv{parse_number(f[0], lineno), parse_number(f[1], lineno)};
    if (iv.lo > iv.hi) throw ParseError(lineno, "lo > hi");
    return iv;
}

HyperRect parse_rect_line(const std::string& line, std::size_t lineno, int d) {
    auto f = split_fields(line);
    if (d <= 0) {
        if (f.size() < 2 || f.size() % 2 != 0)
            throw ParseError(lineno, "expected an even number of fields (lo1 hi1 ... lod hid)");
        d = static_cast<int>(f.size() / 2);
    }
    if (f.size() != static_cast<std::size_t>(2 * d))
        throw ParseError(lineno, "expected " + std::to_string(2 * d) + " fields for d=" + std::to_string(d));
    HyperRect r;
    r.sides.reserve(d);
    for (int a = 0; a < d; ++a) {
        Interval iv{parse_number(f[2 * a], lineno), parse_number(f[2 * a + 1], lineno)};
        if (iv.lo > iv.hi) throw ParseError(lineno, "lo > hi on axis " + std::to_string(a + 1));
        r.sides.push_back(iv);
    }
    return r;
}

double parse_point_line(const std::string& line, std::size_t lineno) {
    auto f = split_fields(line);
    if (f.size() != 1) throw ParseError(lineno, "expected 1 field (x)");
    double x = parse_number(f[0], lineno);
    check_unit_range(x, lineno);
    return x;
}

LabeledPoint parse_labeled_point_line(const std::string& line, std::size_t lineno) {
    auto f = split_fields(line);
    if (f.size() != 2) throw ParseError(lineno, "expected 2 fields (x R|B)");
    double x = parse_number(f[0], lineno);
    check_unit_range(x, lineno);
    Color c;
    if (f[1] == "R")
        c = Color::Red;
    else if (f[1] == "B")
        c = Color::Blue;
    else
        throw ParseError(lineno, "color must be R or B, got '" + f[1] + "'");
    return LabeledPoint{x, c};
}

Halfplane parse_halfplane_line(const std::string& line, std::size_t lineno) {
    auto f = split_fields(line);
    if (f.size() != 3) throw ParseError(lineno, "expected 3 fields (nx ny c)");
    Vec2 n{parse_number(f[0], lineno), parse_number(f[1], lineno)};
    double c = parse_number(f[2], lineno);
    if (norm(n) < 1e-12) throw ParseError(lineno, "halfplane normal has zero length");
    return make_halfplane(n, c);
}

namespace {

template <typename Item, typename LineFn>
std::vector<Item> parse_file(const std::string& path, LineFn&& fn) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Data, "cannot open stream file: " + path);
    std::vector<Item> items;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (is_skippable_line(line)) continue;
        items.push_back(fn(line, lineno));
    }
    return items;
}

}  // namespace

std::vector<Interval> parse_intervals(const std::string& path) {
    return parse_file<Interval>(path, parse_interval_line);
}

std::vector<HyperRect> parse_rects(const std::string& path, int d) {
    int inferred = d;
    return parse_file<HyperRect>(path, [&inferred](const std::string& line, std::size_t lineno) {
        HyperRect r = parse_rect_line(line, lineno, inferred);
        if (inferred <= 0) inferred = r.dim();
        return r;
    });
}

std::vector<double> parse_points(const std::string& path) {
    return parse_file<double>(path, parse_point_line);
}

std::vector<LabeledPoint> parse_labeled_points(const std::string& path) {
    return parse_file<LabeledPoint>(path, parse_labeled_point_line);
}

std::vector<Halfplane> parse_halfplanes(const std::string& path) {
    return parse_file<Halfplane>(path, parse_halfplane_line);
}

}  // namespace geosketch
