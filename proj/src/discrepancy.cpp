#include "geosketch/discrepancy.hpp"

#include <algorithm>
#include <cmath>

#include "geosketch/errors.hpp"

namespace geosketch {

BucketSketch::BucketSketch(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("bucket epsilon must lie in (0,1)");
    counts_.assign(static_cast<std::size_t>(std::ceil(1.0 / eps)), 0);
}

void BucketSketch::update(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Data, "point outside [0,1]");
    // Half-open buckets [(i-1)eps, i*eps); x = 1.0 goes to the last one.
    auto idx = static_cast<std::size_t>(std::floor(x / eps_));
    if (idx >= counts_.size()) idx = counts_.size() - 1;
    ++counts_[idx];
    ++n_;
}

void BucketSketch::merge(const BucketSketch& other) {
    if (other.counts_.size() != counts_.size() || other.eps_ != eps_)
        throw Error(ErrorKind::Data, "bucket sketches with different epsilon cannot merge");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    n_ += other.n_;
}

double BucketSketch::estimate() const {
    if (n_ == 0) throw EmptyInput("geo_disc_estimate");
    const std::size_t b = counts_.size();
    const double n = static_cast<double>(n_);
    std::vector<std::uint64_t> cum(b + 1, 0);  // cum[i] = points in buckets 1..i
    for (std::size_t i = 0; i < b; ++i) cum[i + 1] = cum[i] + counts_[i];

    // An interval from bucket i to bucket j holds between
    // max(0, C_{j-1} - C_i) and C_j - C_{i-1} points (i < j; within one
    // bucket the count ranges over [0, c_i]); the deviation is extremal at
    // the endpoints of that range.
    double best = 0.0;
    for (std::size_t i = 1; i <= b; ++i) {
        double yi = (2.0 * static_cast<double>(i) - 1.0) * eps_ / 2.0;
        for (std::size_t j = i; j <= b; ++j) {
            double yj = (2.0 * static_cast<double>(j) - 1.0) * eps_ / 2.0;
            double len = yj - yi;
            double hi_count = static_cast<double>(cum[j] - cum[i - 1]);
            double lo_count =
                (j > i && cum[j - 1] > cum[i]) ? static_cast<double>(cum[j - 1] - cum[i]) : 0.0;
            best = std::max(best, std::abs(len - hi_count / n));
            best = std::max(best, std::abs(len - lo_count / n));
        }
    }
    return best;
}

ColorPrefixSketch::ColorPrefixSketch(bool require_sorted) : require_sorted_(require_sorted) {}

void ColorPrefixSketch::update(const LabeledPoint& p) {
    if (p.color == Color::None) throw Error(ErrorKind::Data, "labeled point without a color");
    if (require_sorted_ && n_ > 0 && p.x < last_x_) throw UnsortedInput(n_ + 1);
    last_x_ = p.x;
    ++n_;
    prefix_ += (p.color == Color::Red) ? 1 : -1;
    max_prefix_ = std::max(max_prefix_, prefix_);
    min_prefix_ = std::min(min_prefix_, prefix_);
}

double geo_disc_estimate(const std::vector<double>& stream, double eps) {
    BucketSketch sk(eps);
    for (double x : stream) sk.update(x);
    return sk.estimate();
}

std::int64_t color_disc_sorted(const std::vector<LabeledPoint>& stream, bool require_sorted) {
    ColorPrefixSketch sk(require_sorted);
    for (const auto& p : stream) sk.update(p);
    return sk.estimate();
}

double star_geo_disc_exact(const std::vector<double>& sorted_points) {
    if (sorted_points.empty()) throw EmptyInput("star_geo_disc_exact");
    const double n = static_cast<double>(sorted_points.size());
    double best = 0.0;
    for (std::size_t i = 0; i < sorted_points.size(); ++i) {
        if (i > 0 && sorted_points[i] < sorted_points[i - 1])
            throw Error(ErrorKind::Data, "star_geo_disc_exact: input not sorted");
        double x = sorted_points[i];
        if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::Data, "point outside [0,1]");
        best = std::max(best, std::abs(x - (2.0 * static_cast<double>(i) + 1.0) / (2.0 * n)));
    }
    return best;
}

}  // namespace geosketch
