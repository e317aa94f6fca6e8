#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <vector>

#include "geosketch/geometry.hpp"

namespace geosketch {

// Randomized additive sketch: M seeded sample points with monotone hit flags;
// the estimate is the hit fraction. Pr(|estimate - V| <= eps) >= 1 - rho.
class SamplerSketch {
public:
    SamplerSketch(int d, double eps, double rho, std::uint64_t seed);

    void update(const HyperRect& r);
    double estimate() const;

    int dim() const { return d_; }
    std::size_t sample_count() const { return m_; }  // M
    std::size_t hit_count() const { return m_ - unhit_.size(); }
    std::size_t space_counter() const { return sample_count(); }

    static std::size_t sample_count_for(double eps, double rho);

private:
    int d_;
    std::size_t m_ = 0;
    std::vector<double> points_;        // M*d coordinates, point-major
    std::vector<std::uint32_t> unhit_;  // indices of points not yet covered
};

// Deterministic sketch for delta-fat boxes in [0,1]^d: clips every box to a
// grid of delta-cells and feeds each clip, in cell-local coordinates, to an
// anchored strip recursion. Guarantees V - eps <= estimate <= V.
class FatKleeSketch {
public:
    FatKleeSketch(int d, double eps, double delta);

    void update(const HyperRect& r);
    double estimate() const;

    std::size_t space_counter() const;  // live stored scalars across all recursions

    // Anchored recursion over [0,1]^local_d; exposed for the d=1 base-case
    // exactness contract. Every inserted extent must touch 0 or 1 per axis.
    class Anchored {
    public:
        Anchored(int d, double eps);
        void insert(const std::vector<Interval>& extents);
        double estimate() const;
        std::size_t live_scalars() const;

    private:
        int d_;
        double eps_;
        // d == 1 state
        double left_ = 0.0;   // max coverage anchored at 0
        double right_ = 0.0;  // max coverage anchored at 1
        // d > 1 state
        int strip_count_ = 0;
        std::vector<std::unique_ptr<Anchored>> strips_;

        void feed_strips(const std::vector<Interval>& extents, int first, int count);
    };

private:
    int d_;
    double eps_;
    double delta_;
    std::vector<double> boundaries_;  // shared per-axis cell walls b_0..b_m
    int cells_per_axis_;
    std::vector<std::unique_ptr<Anchored>> cells_;  // lazily allocated, row-major
    std::vector<double> cell_volume_;               // precomputed, index-aligned

    std::size_t cell_index(const std::vector<int>& idx) const;
};

// Distinct-count estimator over covered unit cells for integer-corner boxes
// in [0,N]^d (k smallest hash values).
class GridF0Sketch {
public:
    GridF0Sketch(std::int64_t n_per_axis, int d, double eps, std::uint64_t seed);

    void update(const HyperRect& r);
    double estimate() const;

    std::size_t register_budget() const { return k_; }
    std::size_t space_counter() const { return registers_.size(); }

private:
    std::int64_t n_;
    int d_;
    std::size_t k_;
    std::uint64_t seed_;
    std::set<std::uint64_t> registers_;  // k smallest distinct hashes
};

// One-pass wrappers.
double klee_sample_estimate(const std::vector<HyperRect>& stream, int d, double eps, double rho,
                            std::uint64_t seed);
double klee_fat_estimate(const std::vector<HyperRect>& stream, int d, double eps, double delta);
double klee_grid_f0_estimate(const std::vector<HyperRect>& stream, std::int64_t n_per_axis, int d,
                             double eps, std::uint64_t seed);

}  // namespace geosketch
