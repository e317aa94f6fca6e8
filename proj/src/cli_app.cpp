#include "geosketch/cli_app.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "geosketch/convex.hpp"
#include "geosketch/discrepancy.hpp"
#include "geosketch/errors.hpp"
#include "geosketch/gadgets.hpp"
#include "geosketch/klee.hpp"
#include "geosketch/oracles.hpp"
#include "geosketch/streams.hpp"

namespace geosketch {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Options {
    std::string in;
    std::string out;
    double epsilon = 0.1;
    double rho = 0.1;
    double delta = 0.25;
    int d = 0;  // 0 = infer from data
    std::uint64_t seed = 0;
    bool oracle = false;
    bool feasible = false;
    bool pretty = false;
    std::vector<double> query;
    std::vector<double> objective;
    std::string gadget;
    std::string x_bits;
    std::string y_bits;
    int index = 0;
    std::string solver;
    std::string problem;
};

void check_unit(double v, const std::string& name) {
    if (!(v > 0.0 && v < 1.0)) throw UsageError(name + " must lie in (0,1)");
}

class Report {
public:
    Report(const std::string& command, const Clock::time_point& start) : start_(start) {
        j_["command"] = command;
        j_["params"] = json::object();
    }

    json& params() { return j_["params"]; }
    void set_estimate(json v) { j_["estimate"] = std::move(v); }
    void set_oracle(double oracle_value, double abs_error) {
        j_["oracle_value"] = oracle_value;
        j_["abs_error"] = abs_error;
    }
    json& extra() {
        if (!j_.contains("extra")) j_["extra"] = json::object();
        return j_["extra"];
    }
    void set_items(std::size_t n) { items_ = n; }
    void add_space(const std::string& key, std::size_t v) { space_[key] = v; }

    void emit(std::ostream& os, bool pretty) {
        j_["items_processed"] = items_;
        j_["space_counters"] = space_;
        auto ms = std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
        j_["elapsed_ms"] = ms;
        if (pretty)
            os << j_.dump(2) << "\n";
        else
            os << j_.dump() << "\n";
    }

private:
    json j_;
    json space_ = json::object();
    std::size_t items_ = 0;
    Clock::time_point start_;
};

int infer_dim(const std::vector<HyperRect>& rects, int flag_d) {
    if (flag_d > 0) return flag_d;
    if (rects.empty()) throw Error(ErrorKind::Data, "cannot infer dimension from an empty stream");
    return rects.front().dim();
}

// ------------------------------------------------------- additive solvers

class GeoDiscSolver final : public AdditiveSolver<double> {
public:
    explicit GeoDiscSolver(double eps) : sketch_(eps) {}
    void update(const double& x) override { sketch_.update(x); }
    double estimate() const override { return sketch_.estimate(); }

private:
    BucketSketch sketch_;
};

class KleeRandSolver final : public AdditiveSolver<HyperRect> {
public:
    KleeRandSolver(int d, double eps, double rho, std::uint64_t seed) : sketch_(d, eps, rho, seed) {}
    void update(const HyperRect& r) override { sketch_.update(r); }
    double estimate() const override { return sketch_.estimate(); }

private:
    SamplerSketch sketch_;
};

class KleeFatSolver final : public AdditiveSolver<HyperRect> {
public:
    KleeFatSolver(int d, double eps, double delta) : sketch_(d, eps, delta) {}
    void update(const HyperRect& r) override { sketch_.update(r); }
    double estimate() const override { return sketch_.estimate(); }

private:
    FatKleeSketch sketch_;
};

// ------------------------------------------------------------ subcommands

void run_klee_rand(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    check_unit(o.rho, "rho");
    auto rects = parse_rects(o.in, o.d);
    int d = infer_dim(rects, o.d);
    rep.params() = {{"epsilon", o.epsilon}, {"rho", o.rho}, {"d", d}, {"seed", o.seed}};
    SamplerSketch sk(d, o.epsilon, o.rho, o.seed);
    for (const auto& r : rects) sk.update(r);
    double est = sk.estimate();
    rep.set_estimate(est);
    rep.set_items(rects.size());
    rep.add_space("samples", sk.space_counter());
    if (o.oracle) {
        double exact = oracles::klee_exact(rects, oracles::OracleBudget::from_env());
        rep.set_oracle(exact, std::abs(est - exact));
    }
}

void run_klee_fat(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    if (!(o.delta > 0.0 && o.delta <= 1.0)) throw UsageError("delta must lie in (0,1]");
    auto rects = parse_rects(o.in, o.d);
    int d = infer_dim(rects, o.d);
    rep.params() = {{"epsilon", o.epsilon}, {"delta", o.delta}, {"d", d}};
    FatKleeSketch sk(d, o.epsilon, o.delta);
    for (const auto& r : rects) sk.update(r);
    double est = sk.estimate();
    rep.set_estimate(est);
    rep.set_items(rects.size());
    rep.add_space("live_scalars", sk.space_counter());
    if (o.oracle) {
        double exact = oracles::klee_exact(rects, oracles::OracleBudget::from_env());
        rep.set_oracle(exact, std::abs(est - exact));
    }
}

void run_klee_grid_f0(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    auto rects = parse_rects(o.in, o.d);
    int d = infer_dim(rects, o.d);
    std::int64_t n_axis = 1;
    for (const auto& r : rects)
        for (const auto& s : r.sides)
            n_axis = std::max(n_axis, static_cast<std::int64_t>(std::ceil(s.hi)));
    rep.params() = {{"epsilon", o.epsilon}, {"d", d}, {"seed", o.seed}, {"N", n_axis}};
    GridF0Sketch sk(n_axis, d, o.epsilon, o.seed);
    for (const auto& r : rects) sk.update(r);
    double est = sk.estimate();
    rep.set_estimate(est);
    rep.set_items(rects.size());
    rep.add_space("registers", sk.space_counter());
    rep.add_space("register_budget", sk.register_budget());
    if (o.oracle) {
        auto exact = static_cast<double>(
            oracles::grid_cover_exact(rects, n_axis, d, oracles::OracleBudget::from_env()));
        rep.set_oracle(exact, std::abs(est - exact));
    }
}

void run_convex_approx(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    auto hs = parse_halfplanes(o.in);
    rep.params() = {{"epsilon", o.epsilon}};
    ConvexStreamSketch sk(o.epsilon);
    for (const auto& h : hs) sk.insert(h);
    ConvexPolygon approx = sk.query();
    rep.set_estimate(approx.area());
    rep.set_items(hs.size());
    rep.add_space("facets", sk.facet_counter());
    rep.extra()["vertices"] = approx.size();
    if (o.oracle) {
        ConvexPolygon exact = oracles::exact_intersection(hs, oracles::OracleBudget::from_env());
        double ea = exact.area();
        rep.set_oracle(ea, std::abs(approx.area() - ea));
        if (!exact.empty() && !approx.empty())
            rep.extra()["hausdorff_to_exact"] = hausdorff_distance(exact, approx, 4096);
    }
}

void run_lp(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    if (o.objective.size() != 2) throw UsageError("--objective requires two values");
    auto hs = parse_halfplanes(o.in);
    rep.params() = {{"epsilon", o.epsilon}};
    ConvexStreamSketch sk(o.epsilon);
    for (const auto& h : hs) sk.insert(h);
    LpSolution sol = sk.lp_maximize({o.objective[0], o.objective[1]}, o.feasible);
    rep.set_estimate(sol.value);
    rep.set_items(hs.size());
    rep.add_space("facets", sk.facet_counter());
    rep.extra()["point"] = {sol.point.x, sol.point.y};
    rep.extra()["feasible_mode"] = o.feasible;
    if (o.oracle) {
        auto exact = oracles::lp_exact(hs, {o.objective[0], o.objective[1]},
                                       oracles::OracleBudget::from_env());
        rep.set_oracle(exact.value, std::abs(sol.value - exact.value));
    }
}

void run_membership(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    if (o.query.size() != 2) throw UsageError("--query requires two values");
    auto hs = parse_halfplanes(o.in);
    rep.params() = {{"epsilon", o.epsilon}};
    ConvexStreamSketch sk(o.epsilon);
    for (const auto& h : hs) sk.insert(h);
    Vec2 q{o.query[0], o.query[1]};
    Membership m = sk.membership_test(q);
    const char* name = m == Membership::Inside ? "inside"
                       : m == Membership::Outside ? "outside"
                                                  : "unknown";
    rep.set_estimate(name);
    rep.set_items(hs.size());
    rep.add_space("facets", sk.facet_counter());
    if (o.oracle) {
        ConvexPolygon exact = oracles::exact_intersection(hs, oracles::OracleBudget::from_env());
        double truth = (!exact.empty() && exact.contains(q, 1e-12)) ? 1.0 : 0.0;
        double enc = m == Membership::Inside ? 1.0 : m == Membership::Outside ? 0.0 : 0.5;
        rep.set_oracle(truth, std::abs(enc - truth));
    }
}

void run_disc_geo(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    auto pts = parse_points(o.in);
    rep.params() = {{"epsilon", o.epsilon}};
    BucketSketch sk(o.epsilon);
    for (double x : pts) sk.update(x);
    double est = sk.estimate();
    rep.set_estimate(est);
    rep.set_items(pts.size());
    rep.add_space("counters", sk.space_counter());
    if (o.oracle) {
        double exact = oracles::geo_disc_exact(pts, oracles::OracleBudget::from_env());
        rep.set_oracle(exact, std::abs(est - exact));
    }
}

void run_disc_color_sorted(const Options& o, Report& rep) {
    auto pts = parse_labeled_points(o.in);
    ColorPrefixSketch sk(true);
    for (const auto& p : pts) sk.update(p);
    auto est = static_cast<double>(sk.estimate());
    rep.set_estimate(est);
    rep.set_items(pts.size());
    rep.add_space("integers", sk.space_counter());
    if (o.oracle) {
        auto exact = oracles::color_disc_exact(pts, oracles::OracleBudget::from_env());
        rep.set_oracle(static_cast<double>(exact.dc), std::abs(est - static_cast<double>(exact.dc)));
    }
}

void run_multipass(const Options& o, Report& rep) {
    check_unit(o.epsilon, "epsilon");
    MultipassResult res;
    std::size_t items = 0;
    if (o.solver == "disc-geo") {
        FileSource<double> src(o.in, parse_point_line);
        AdditiveSolverFactory<double> factory = [](double eps) {
            return std::make_unique<GeoDiscSolver>(eps);
        };
        res = multipass_multiplicative(factory, src, o.epsilon);
        items = parse_points(o.in).size();
        rep.params() = {{"epsilon", o.epsilon}};
    } else if (o.solver == "klee-rand") {
        check_unit(o.rho, "rho");
        int d = infer_dim(parse_rects(o.in, o.d), o.d);
        items = parse_rects(o.in, d).size();
        FileSource<HyperRect> src(o.in, [d](const std::string& line, std::size_t lineno) {
            return parse_rect_line(line, lineno, d);
        });
        AdditiveSolverFactory<HyperRect> factory = [&](double eps) {
            return std::make_unique<KleeRandSolver>(d, eps, o.rho, o.seed);
        };
        res = multipass_multiplicative(factory, src, o.epsilon);
        rep.params() = {{"epsilon", o.epsilon}, {"rho", o.rho}, {"d", d}, {"seed", o.seed}};
    } else if (o.solver == "klee-fat") {
        int d = infer_dim(parse_rects(o.in, o.d), o.d);
        items = parse_rects(o.in, d).size();
        FileSource<HyperRect> src(o.in, [d](const std::string& line, std::size_t lineno) {
            return parse_rect_line(line, lineno, d);
        });
        AdditiveSolverFactory<HyperRect> factory = [&](double eps) {
            return std::make_unique<KleeFatSolver>(d, eps, o.delta);
        };
        res = multipass_multiplicative(factory, src, o.epsilon);
        rep.params() = {{"epsilon", o.epsilon}, {"delta", o.delta}, {"d", d}};
    } else {
        throw UsageError("--solver must be one of disc-geo, klee-rand, klee-fat");
    }
    rep.set_estimate(res.value);
    rep.set_items(items);
    rep.extra()["passes"] = res.passes;
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Data, "cannot open output file: " + path);
    for (const auto& l : lines) out << l << "\n";
}

void run_gen(const Options& o, Report& rep) {
    if (o.out.empty()) throw UsageError("gen requires --out");
    if (o.x_bits.empty()) throw UsageError("gen requires --x");
    auto x = gadgets::parse_bits(o.x_bits);
    json sidecar;
    std::vector<std::string> lines;
    std::size_t items = 0;

    if (o.gadget == "klee-disj") {
        auto y = gadgets::parse_bits(o.y_bits);
        auto inst = gadgets::gen_klee_disj(x, y);
        for (const auto& iv : inst.stream) lines.push_back(fmt17(iv.lo) + " " + fmt17(iv.hi));
        sidecar["prediction"] = {{"union_length", inst.union_length},
                                 {"alice_length", inst.alice_length},
                                 {"bob_length", inst.bob_length},
                                 {"disj", inst.disj}};
        rep.set_estimate(inst.union_length);
        items = inst.stream.size();
    } else if (o.gadget == "geodisc") {
        auto y = gadgets::parse_bits(o.y_bits);
        auto inst = gadgets::gen_geodisc_disj(x, y);
        for (double p : inst.stream) lines.push_back(fmt17(p));
        sidecar["prediction"] = {{"disj", inst.disj},
                                 {"dstar", inst.disj ? json() : json(inst.dstar)},
                                 {"dstar_upper_bound", inst.dstar_bound}};
        rep.set_estimate(inst.disj ? inst.dstar_bound : inst.dstar);
        items = inst.stream.size();
    } else if (o.gadget == "colordisc") {
        auto y = gadgets::parse_bits(o.y_bits);
        auto inst = gadgets::gen_colordisc_disj(x, y);
        for (const auto& p : inst.stream)
            lines.push_back(fmt17(p.x) + (p.color == Color::Red ? " R" : " B"));
        sidecar["prediction"] = {{"disj", inst.disj},
                                 {"dcstar", inst.dcstar},
                                 {"separation_threshold", inst.separation_threshold}};
        rep.set_estimate(static_cast<double>(inst.dcstar));
        items = inst.stream.size();
    } else if (o.gadget == "convex-index") {
        if (o.index < 1) throw UsageError("convex-index requires --index >= 1");
        auto inst = gadgets::gen_convex_index(x, static_cast<std::size_t>(o.index));
        for (const auto& h : inst.stream)
            lines.push_back(fmt17(h.normal.x) + " " + fmt17(h.normal.y) + " " + fmt17(h.offset));
        sidecar["prediction"] = {{"inside", inst.inside},
                                 {"outside_distance", inst.outside_distance},
                                 {"query", {inst.query.x, inst.query.y}}};
        rep.set_estimate(inst.inside ? 1.0 : 0.0);
        items = inst.stream.size();
    } else {
        throw UsageError("--gadget must be one of klee-disj, geodisc, colordisc, convex-index");
    }

    sidecar["params"] = {{"gadget", o.gadget}, {"x", o.x_bits}};
    if (!o.y_bits.empty()) sidecar["params"]["y"] = o.y_bits;
    if (o.index > 0) sidecar["params"]["index"] = o.index;

    write_lines(o.out, lines);
    std::ofstream side(o.out + ".json");
    if (!side) throw Error(ErrorKind::Data, "cannot open sidecar file: " + o.out + ".json");
    side << sidecar.dump(2) << "\n";

    rep.params() = {{"gadget", o.gadget}};
    rep.set_items(items);
    rep.extra()["stream_file"] = o.out;
    rep.extra()["sidecar_file"] = o.out + ".json";
}

void run_oracle(const Options& o, Report& rep) {
    auto budget = oracles::OracleBudget::from_env();
    rep.params() = {{"problem", o.problem}};
    if (o.problem == "klee") {
        auto rects = parse_rects(o.in, o.d);
        rep.set_estimate(oracles::klee_exact(rects, budget));
        rep.set_items(rects.size());
    } else if (o.problem == "disc-geo") {
        auto pts = parse_points(o.in);
        rep.set_estimate(oracles::geo_disc_exact(pts, budget));
        rep.set_items(pts.size());
    } else if (o.problem == "disc-geo-star") {
        auto pts = parse_points(o.in);
        std::sort(pts.begin(), pts.end());
        rep.set_estimate(star_geo_disc_exact(pts));
        rep.set_items(pts.size());
    } else if (o.problem == "disc-color") {
        auto pts = parse_labeled_points(o.in);
        rep.set_estimate(static_cast<double>(oracles::color_disc_exact(pts, budget).dc));
        rep.set_items(pts.size());
    } else if (o.problem == "disc-color-star") {
        auto pts = parse_labeled_points(o.in);
        rep.set_estimate(static_cast<double>(oracles::color_disc_exact(pts, budget).dc_star));
        rep.set_items(pts.size());
    } else if (o.problem == "lp") {
        if (o.objective.size() != 2) throw UsageError("--objective requires two values");
        auto hs = parse_halfplanes(o.in);
        auto sol = oracles::lp_exact(hs, {o.objective[0], o.objective[1]}, budget);
        rep.set_estimate(sol.value);
        rep.set_items(hs.size());
        rep.extra()["point"] = {sol.point.x, sol.point.y};
    } else {
        throw UsageError("oracle problem must be one of klee, disc-geo, disc-geo-star, disc-color, "
                         "disc-color-star, lp");
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out) {
    auto start = Clock::now();
    Options o;
    CLI::App app{"geosketch: streaming geometry sketches with exact oracles"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_in) {
        auto* in = sub->add_option("--in", o.in, "input stream file");
        if (needs_in) in->required();
        sub->add_option("--epsilon", o.epsilon, "accuracy parameter");
        sub->add_option("--rho", o.rho, "failure probability");
        sub->add_option("--delta", o.delta, "fatness parameter");
        sub->add_option("--d", o.d, "dimension (0 = infer)");
        sub->add_option("--seed", o.seed, "RNG seed");
        sub->add_flag("--oracle", o.oracle, "also run the exact oracle");
        sub->add_option("--query", o.query, "query point x y")->expected(2);
        sub->add_option("--objective", o.objective, "objective vector cx cy")->expected(2);
        sub->add_flag("--feasible", o.feasible, "LP feasible mode (erode by epsilon)");
        sub->add_option("--x", o.x_bits, "Alice bit vector");
        sub->add_option("--y", o.y_bits, "Bob bit vector");
        sub->add_option("--index", o.index, "query index");
        sub->add_option("--out", o.out, "output path");
        sub->add_flag("--pretty", o.pretty, "pretty-print the report");
    };

    struct Cmd {
        const char* name;
        const char* help;
        bool needs_in;
        void (*fn)(const Options&, Report&);
    };
    const Cmd cmds[] = {
        {"klee-rand", "randomized Klee's measure sketch", true, run_klee_rand},
        {"klee-fat", "deterministic fat-rectangle Klee sketch", true, run_klee_fat},
        {"klee-grid-f0", "distinct-count Klee estimator on the integer grid", true, run_klee_grid_f0},
        {"convex-approx", "halfplane-stream convex body approximation", true, run_convex_approx},
        {"lp", "epsilon-additive LP over a halfplane stream", true, run_lp},
        {"membership", "point membership property test", true, run_membership},
        {"disc-geo", "geometric discrepancy bucketing sketch", true, run_disc_geo},
        {"disc-color-sorted", "exact color discrepancy of a sorted stream", true, run_disc_color_sorted},
        {"multipass", "additive-to-multiplicative multipass driver", true, run_multipass},
        {"gen", "adversarial gadget stream generator", false, run_gen},
        {"oracle", "exact brute-force reference computations", true, run_oracle},
    };

    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common(sub, c.needs_in);
        if (std::string(c.name) == "multipass")
            sub->add_option("--solver", o.solver, "wrapped additive solver")->required();
        if (std::string(c.name) == "gen")
            sub->add_option("--gadget", o.gadget, "gadget name")->required();
        if (std::string(c.name) == "oracle")
            sub->add_option("problem", o.problem, "oracle problem name")->required();
    }

    std::vector<const char*> argv;
    argv.push_back("geosketch");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        out << json{{"error", e.what()}}.dump() << "\n";
        return 2;
    }

    const Cmd* chosen = nullptr;
    for (const auto& c : cmds)
        if (app.get_subcommand(c.name)->parsed()) chosen = &c;
    if (!chosen) {
        out << json{{"error", "no subcommand"}}.dump() << "\n";
        return 2;
    }

    try {
        Report rep(chosen->name, start);
        chosen->fn(o, rep);
        rep.emit(out, o.pretty);
        return 0;
    } catch (const Error& e) {
        out << json{{"error", e.what()}}.dump() << "\n";
        switch (e.kind()) {
            case ErrorKind::Usage: return 2;
            case ErrorKind::Data: return 3;
            case ErrorKind::Budget: return 4;
        }
        return 3;
    } catch (const std::exception& e) {
        out << json{{"error", e.what()}}.dump() << "\n";
        return 3;
    }
}

}  // namespace geosketch
