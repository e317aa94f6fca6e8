#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "geosketch/klee.hpp"
#include "geosketch/oracles.hpp"

using namespace geosketch;

namespace {

HyperRect box1(double lo, double hi) { return HyperRect{{{lo, hi}}}; }

HyperRect box2(double x0, double x1, double y0, double y1) {
    return HyperRect{{{x0, x1}, {y0, y1}}};
}

std::vector<HyperRect> random_fat_rects(std::mt19937_64& rng, int d, double delta, int n) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<HyperRect> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        HyperRect r;
        for (int a = 0; a < d; ++a) {
            double len = delta + (1.0 - delta) * uni(rng) * 0.5;
            double lo = uni(rng) * (1.0 - len);
            r.sides.push_back({lo, lo + len});
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

// ----------------------------------------------------------- randomized

TEST_CASE("sampler reports 0 on an empty stream") {
    SamplerSketch sk(2, 0.1, 0.1, 42);
    CHECK(sk.estimate() == 0.0);
}

TEST_CASE("sampler saturates at 1 on the full box") {
    for (int d = 1; d <= 3; ++d) {
        HyperRect full;
        for (int a = 0; a < d; ++a) full.sides.push_back({0.0, 1.0});
        CHECK(klee_sample_estimate({full}, d, 0.1, 0.1, 7) == 1.0);
    }
}

TEST_CASE("sampler matches the sweep oracle on overlapping intervals") {
    std::vector<HyperRect> rects{box1(0.0, 0.5), box1(0.25, 0.75)};
    double truth = oracles::klee_exact(rects);
    CHECK(truth == doctest::Approx(0.75));
    int hits = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        double est = klee_sample_estimate(rects, 1, 0.05, 0.05, seed);
        if (std::abs(est - truth) <= 0.05) ++hits;
    }
    CHECK(hits >= 19);
}

TEST_CASE("sampler sample count follows the two-sided Chernoff formula") {
    CHECK(SamplerSketch::sample_count_for(0.05, 0.05) ==
          static_cast<std::size_t>(std::ceil((2.05 / 0.0025) * std::log(40.0))));
}

TEST_CASE("sampler estimate is monotone and permutation-invariant for a fixed seed") {
    std::mt19937_64 rng(3);
    auto rects = random_fat_rects(rng, 2, 0.05, 40);
    SamplerSketch inc(2, 0.1, 0.1, 11);
    double prev = 0.0;
    for (const auto& r : rects) {
        inc.update(r);
        double cur = inc.estimate();
        CHECK(cur >= prev);
        prev = cur;
    }
    auto shuffled = rects;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    SamplerSketch perm(2, 0.1, 0.1, 11);
    for (const auto& r : shuffled) perm.update(r);
    CHECK(perm.estimate() == prev);
}

TEST_CASE("sampler empirical failure rate stays near rho") {
    std::mt19937_64 rng(5);
    auto rects = random_fat_rects(rng, 1, 0.1, 25);
    double truth = oracles::klee_exact(rects);
    const double eps = 0.1, rho = 0.2;
    int failures = 0;
    const int trials = 250;
    for (int t = 0; t < trials; ++t) {
        double est = klee_sample_estimate(rects, 1, eps, rho, 1000 + t);
        if (std::abs(est - truth) > eps) ++failures;
    }
    CHECK(static_cast<double>(failures) / trials <= rho + 0.03);
}

TEST_CASE("sampler rejects mismatched dimensions") {
    SamplerSketch sk(2, 0.1, 0.1, 0);
    CHECK_THROWS_AS(sk.update(box1(0.0, 1.0)), DimensionMismatch);
}

// -------------------------------------------------------------- fat Klee

TEST_CASE("fat sketch is exactly 1 on the full box") {
    for (double delta : {1.0, 0.5, 0.25, 0.3, 0.17}) {
        for (double eps : {0.5, 0.1, 0.07}) {
            HyperRect full = box2(0.0, 1.0, 0.0, 1.0);
            CHECK(klee_fat_estimate({full}, 2, eps, delta) == 1.0);
        }
    }
    // Property over random parameters: saturation is exact, not approximate.
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        double delta = 0.11 + 0.89 * uni(rng);
        double eps = 0.06 + 0.9 * uni(rng);
        HyperRect full = box2(0.0, 1.0, 0.0, 1.0);
        CHECK(klee_fat_estimate({full}, 2, eps, delta) == 1.0);
    }
}

TEST_CASE("anchored base case keeps left/right maxima") {
    FatKleeSketch::Anchored base(1, 0.1);
    base.insert({{0.0, 0.3}});
    base.insert({{0.7, 1.0}});
    CHECK(base.estimate() == doctest::Approx(0.6));
    base.insert({{0.0, 0.9}});  // overlaps the right part
    CHECK(base.estimate() == 1.0);
}

TEST_CASE("anchored base case matches the exact sweep on anchored streams") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    for (int trial = 0; trial < 100; ++trial) {
        FatKleeSketch::Anchored base(1, 0.5);
        std::vector<HyperRect> rects;
        int n = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < n; ++i) {
            double v = uni(rng);
            Interval iv = (rng() % 2 == 0) ? Interval{0.0, v} : Interval{v, 1.0};
            base.insert({iv});
            rects.push_back(HyperRect{{iv}});
        }
        double truth = oracles::klee_exact(rects);
        CHECK(base.estimate() == truth);
    }
}

TEST_CASE("fat sketch honors the one-sided error bounds against the oracle") {
    std::mt19937_64 rng(23);
    const double eps = 0.1, delta = 0.25;
    for (int trial = 0; trial < 30; ++trial) {
        auto rects = random_fat_rects(rng, 2, delta, 60);
        double est = klee_fat_estimate(rects, 2, eps, delta);
        double truth = oracles::klee_exact(rects);
        CHECK(est <= truth);
        CHECK(est >= truth - eps);
    }
}

TEST_CASE("fat sketch d=1 stays one-sided within eps") {
    std::mt19937_64 rng(29);
    const double eps = 0.05, delta = 0.2;
    for (int trial = 0; trial < 50; ++trial) {
        auto rects = random_fat_rects(rng, 1, delta, 40);
        double est = klee_fat_estimate(rects, 1, eps, delta);
        double truth = oracles::klee_exact(rects);
        CHECK(est <= truth);
        CHECK(est >= truth - eps);
    }
}

TEST_CASE("fat sketch rejects thin rectangles but admits the 1e-12 tolerance") {
    FatKleeSketch sk(2, 0.1, 0.25);
    CHECK_THROWS_AS(sk.update(box2(0.0, 0.2, 0.0, 1.0)), FatnessViolation);
    CHECK_NOTHROW(sk.update(box2(0.0, 0.25 - 5e-13, 0.0, 1.0)));
    CHECK_THROWS_AS(sk.update(box1(0.0, 1.0)), DimensionMismatch);
}

TEST_CASE("fat sketch stays one-sided in three dimensions") {
    std::mt19937_64 rng(37);
    HyperRect full{{{0.0, 1.0}, {0.0, 1.0}, {0.0, 1.0}}};
    CHECK(klee_fat_estimate({full}, 3, 0.3, 0.5) == 1.0);
    const double eps = 0.3, delta = 0.5;
    for (int trial = 0; trial < 5; ++trial) {
        auto rects = random_fat_rects(rng, 3, delta, 20);
        double est = klee_fat_estimate(rects, 3, eps, delta);
        double truth = oracles::klee_exact(rects);
        CHECK(est <= truth);
        CHECK(est >= truth - eps);
    }
}

TEST_CASE("fat sketch space counter reports live state") {
    FatKleeSketch sk(2, 0.1, 0.25);
    CHECK(sk.space_counter() == 0);
    sk.update(box2(0.0, 0.3, 0.0, 0.3));
    CHECK(sk.space_counter() > 0);
}

// --------------------------------------------------------------- grid F0

TEST_CASE("grid estimator is close on the full grid and idempotent") {
    const std::int64_t n = 32;
    HyperRect whole = box2(0.0, static_cast<double>(n), 0.0, static_cast<double>(n));
    GridF0Sketch sk(n, 2, 0.1, 99);
    sk.update(whole);
    double first = sk.estimate();
    CHECK(std::abs(first - 1024.0) <= 0.1 * 1024.0);
    sk.update(whole);  // duplicate never changes the estimate
    CHECK(sk.estimate() == first);
}

TEST_CASE("grid estimator is exact below the register budget") {
    GridF0Sketch sk(32, 2, 0.1, 1);  // k = 400 registers
    sk.update(box2(0.0, 10.0, 0.0, 10.0));
    CHECK(sk.estimate() == 100.0);
    CHECK(sk.space_counter() == 100);
}

TEST_CASE("grid estimator tracks the boolean-grid oracle on random instances") {
    std::mt19937_64 rng(31);
    const std::int64_t n = 32;
    int ok = 0;
    const int trials = 30;
    for (int t = 0; t < trials; ++t) {
        std::vector<HyperRect> rects;
        for (int i = 0; i < 20; ++i) {
            auto coord = [&](std::int64_t hi) { return static_cast<double>(rng() % hi); };
            double x0 = coord(n), y0 = coord(n);
            double x1 = x0 + 1 + coord(n - static_cast<std::int64_t>(x0));
            double y1 = y0 + 1 + coord(n - static_cast<std::int64_t>(y0));
            rects.push_back(box2(x0, x1, y0, y1));
        }
        double est = klee_grid_f0_estimate(rects, n, 2, 0.1, 5000 + t);
        auto truth = static_cast<double>(oracles::grid_cover_exact(rects, n, 2));
        if (std::abs(est - truth) <= 0.1 * truth) ++ok;
    }
    CHECK(ok * 3 >= trials * 2);
}

TEST_CASE("grid estimator enforces the desk-scale universe bound") {
    CHECK_THROWS_AS(GridF0Sketch(5000, 2, 0.1, 0), UniverseTooLarge);
    GridF0Sketch sk(8, 2, 0.1, 0);
    CHECK_THROWS_AS(sk.update(box2(0.0, 1.5, 0.0, 2.0)), NonIntegerCorner);
}
