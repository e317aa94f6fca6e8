#pragma once

#include <cstdint>
#include <vector>

#include "geosketch/geometry.hpp"

namespace geosketch {

// One-pass bucketing sketch for 1-D geometric discrepancy: ceil(1/eps)
// width-eps buckets (last bucket right-closed), counters only. The report is
// eps-additive; post-stream work is O(1/eps^2).
class BucketSketch {
public:
    explicit BucketSketch(double eps);

    void update(double x);
    double estimate() const;

    std::uint64_t count() const { return n_; }
    std::size_t bucket_count() const { return counts_.size(); }
    std::size_t space_counter() const { return bucket_count() + 3; }

    // Two sketches with identical eps merge by counter addition.
    void merge(const BucketSketch& other);

private:
    double eps_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t n_ = 0;
};

// Exact color discrepancy of a sorted red/blue stream in three integers:
// the answer is max_prefix - min_prefix of the running (#red - #blue), with
// the virtual empty prefix 0 included.
class ColorPrefixSketch {
public:
    explicit ColorPrefixSketch(bool require_sorted = true);

    void update(const LabeledPoint& p);
    std::int64_t estimate() const { return max_prefix_ - min_prefix_; }

    std::uint64_t count() const { return n_; }
    std::size_t space_counter() const { return 3; }

private:
    bool require_sorted_;
    std::int64_t prefix_ = 0;
    std::int64_t max_prefix_ = 0;
    std::int64_t min_prefix_ = 0;
    double last_x_ = 0.0;
    std::uint64_t n_ = 0;
};

double geo_disc_estimate(const std::vector<double>& stream, double eps);
std::int64_t color_disc_sorted(const std::vector<LabeledPoint>& stream, bool require_sorted = true);

// Star geometric discrepancy via the closed-form max_i |x_i - (2i-1)/(2n)|;
// input must arrive sorted ascending.
double star_geo_disc_exact(const std::vector<double>& sorted_points);

}  // namespace geosketch
