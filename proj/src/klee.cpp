#include "geosketch/klee.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <random>

#include "geosketch/errors.hpp"

namespace geosketch {

namespace {

constexpr double kFatnessTol = 1e-12;

void require_dim(int expected, const HyperRect& r) {
    if (r.dim() != expected) throw DimensionMismatch(expected, r.dim());
}

}  // namespace

// ---------------------------------------------------------------- sampler

std::size_t SamplerSketch::sample_count_for(double eps, double rho) {
    return static_cast<std::size_t>(std::ceil((2.0 + eps) / (eps * eps) * std::log(2.0 / rho)));
}

SamplerSketch::SamplerSketch(int d, double eps, double rho, std::uint64_t seed) : d_(d) {
    if (d < 1) throw UsageError("sampler dimension must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("sampler epsilon must lie in (0,1)");
    if (!(rho > 0.0 && rho < 1.0)) throw UsageError("sampler rho must lie in (0,1)");
    m_ = sample_count_for(eps, rho);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    points_.resize(m_ * static_cast<std::size_t>(d));
    for (double& c : points_) c = uni(rng);
    unhit_.resize(m_);
    for (std::size_t j = 0; j < m_; ++j) unhit_[j] = static_cast<std::uint32_t>(j);
}

void SamplerSketch::update(const HyperRect& r) {
    require_dim(d_, r);
    // Flags are monotone: only points not yet hit need testing.
    std::size_t kept = 0;
    for (std::size_t u = 0; u < unhit_.size(); ++u) {
        const double* p = &points_[static_cast<std::size_t>(unhit_[u]) * d_];
        bool inside = true;
        for (int a = 0; a < d_; ++a) {
            if (p[a] < r.sides[a].lo || p[a] > r.sides[a].hi) {
                inside = false;
                break;
            }
        }
        if (!inside) unhit_[kept++] = unhit_[u];
    }
    unhit_.resize(kept);
}

double SamplerSketch::estimate() const {
    return static_cast<double>(hit_count()) / static_cast<double>(sample_count());
}

// --------------------------------------------------------------- fat Klee

FatKleeSketch::Anchored::Anchored(int d, double eps) : d_(d), eps_(eps) {
    if (d > 1) {
        double eps_strip = eps / std::pow(2.0, d + 1);
        strip_count_ = static_cast<int>(std::ceil(1.0 / eps_strip));
        strips_.resize(strip_count_);
    }
}

void FatKleeSketch::Anchored::feed_strips(const std::vector<Interval>& extents, int first, int count) {
    std::vector<Interval> child(extents.begin(), extents.end() - 1);
    for (int j = first; j < first + count; ++j) {
        if (!strips_[j]) strips_[j] = std::make_unique<Anchored>(d_ - 1, eps_ / 2.0);
        strips_[j]->insert(child);
    }
}

void FatKleeSketch::Anchored::insert(const std::vector<Interval>& extents) {
    assert(static_cast<int>(extents.size()) == d_);
    for (const Interval& e : extents) {
        // Anchoring soundness: every clipped piece must contain a cell corner.
        if (e.lo != 0.0 && e.hi != 1.0)
            throw Error(ErrorKind::Data, "internal: piece not anchored to a cell corner");
    }
    if (d_ == 1) {
        const Interval& e = extents[0];
        if (e.lo == 0.0)
            left_ = std::max(left_, e.hi);
        else
            right_ = std::max(right_, 1.0 - e.lo);
        return;
    }
    // Decompose along the last axis; drop the partial top slab.
    const Interval& e = extents.back();
    int covered;
    if (e.lo == 0.0) {
        covered = static_cast<int>(std::floor(e.hi * strip_count_));
        covered = std::min(covered, strip_count_);
        if (covered > 0) feed_strips(extents, 0, covered);
    } else {
        covered = static_cast<int>(std::floor((1.0 - e.lo) * strip_count_));
        covered = std::min(covered, strip_count_);
        if (covered > 0) feed_strips(extents, strip_count_ - covered, covered);
    }
}

double FatKleeSketch::Anchored::estimate() const {
    if (d_ == 1) return std::min(left_ + right_, 1.0);
    long double sum = 0.0L;
    for (const auto& s : strips_)
        if (s) sum += static_cast<long double>(s->estimate());
    double v = static_cast<double>(sum / static_cast<long double>(strip_count_));
    return std::min(v, 1.0);
}

std::size_t FatKleeSketch::Anchored::live_scalars() const {
    if (d_ == 1) return 2;
    std::size_t total = 1;  // the strip directory itself
    for (const auto& s : strips_)
        if (s) total += s->live_scalars();
    return total;
}

FatKleeSketch::FatKleeSketch(int d, double eps, double delta) : d_(d), eps_(eps), delta_(delta) {
    if (d < 1) throw UsageError("fat-Klee dimension must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("fat-Klee epsilon must lie in (0,1)");
    if (!(delta > 0.0 && delta <= 1.0)) throw UsageError("fat-Klee delta must lie in (0,1]");
    cells_per_axis_ = static_cast<int>(std::ceil(1.0 / delta));
    boundaries_.resize(cells_per_axis_ + 1);
    for (int j = 0; j <= cells_per_axis_; ++j) boundaries_[j] = std::min(j * delta, 1.0);
    boundaries_.back() = 1.0;

    std::size_t total = 1;
    for (int a = 0; a < d; ++a) total *= cells_per_axis_;
    cells_.resize(total);
    cell_volume_.resize(total);
    for (std::size_t c = 0; c < total; ++c) {
        double vol = 1.0;
        std::size_t rem = c;
        for (int a = 0; a < d; ++a) {
            int j = static_cast<int>(rem % cells_per_axis_);
            rem /= cells_per_axis_;
            vol *= boundaries_[j + 1] - boundaries_[j];
        }
        cell_volume_[c] = vol;
    }
}

std::size_t FatKleeSketch::cell_index(const std::vector<int>& idx) const {
    std::size_t c = 0;
    for (int a = d_ - 1; a >= 0; --a) c = c * cells_per_axis_ + idx[a];
    return c;
}

void FatKleeSketch::update(const HyperRect& r) {
    require_dim(d_, r);
    for (const Interval& s : r.sides)
        if (s.length() < delta_ - kFatnessTol) throw FatnessViolation(s.length(), delta_);

    // Per-axis: range of intersected cells plus the local [0,1] extent of the
    // clip in each. Endpoints within the fatness tolerance of a wall snap to
    // it, which keeps the anchoring invariant sound.
    std::vector<int> first(d_), last(d_);
    std::vector<std::vector<Interval>> local(d_);
    for (int a = 0; a < d_; ++a) {
        double lo = r.sides[a].lo, hi = r.sides[a].hi;
        int f = static_cast<int>(std::upper_bound(boundaries_.begin(), boundaries_.end(), lo) -
                                 boundaries_.begin()) -
                1;
        f = std::clamp(f, 0, cells_per_axis_ - 1);
        int l = static_cast<int>(std::lower_bound(boundaries_.begin(), boundaries_.end(), hi) -
                                 boundaries_.begin()) -
                1;
        l = std::clamp(l, f, cells_per_axis_ - 1);
        first[a] = f;
        last[a] = l;
        for (int j = f; j <= l; ++j) {
            double wlo = boundaries_[j], whi = boundaries_[j + 1];
            double clo = std::max(lo, wlo), chi = std::min(hi, whi);
            double w = whi - wlo;
            double llo = (clo <= wlo + kFatnessTol) ? 0.0 : (clo - wlo) / w;
            double lhi = (chi >= whi - kFatnessTol) ? 1.0 : (chi - wlo) / w;
            llo = std::clamp(llo, 0.0, 1.0);
            lhi = std::clamp(lhi, llo, 1.0);
            local[a].push_back(Interval{llo, lhi});
        }
    }

    // Route the clipped piece to every intersected cell.
    std::vector<int> idx(d_);
    std::vector<Interval> extents(d_);
    for (int a = 0; a < d_; ++a) idx[a] = first[a];
    while (true) {
        bool degenerate = false;
        for (int a = 0; a < d_; ++a) {
            extents[a] = local[a][idx[a] - first[a]];
            if (extents[a].length() <= 0.0) degenerate = true;
        }
        if (!degenerate) {
            std::size_t c = cell_index(idx);
            if (!cells_[c]) cells_[c] = std::make_unique<Anchored>(d_, eps_);
            cells_[c]->insert(extents);
        }
        int a = 0;
        while (a < d_) {
            if (++idx[a] <= last[a]) break;
            idx[a] = first[a];
            ++a;
        }
        if (a == d_) break;
    }
}

double FatKleeSketch::estimate() const {
    // Normalizing by the grid's own volume makes the fully covered case come
    // out exactly 1; with 1/delta integral this equals delta^d * sum.
    long double s1 = 0.0L, s0 = 0.0L;
    for (std::size_t c = 0; c < cells_.size(); ++c) {
        long double vol = cell_volume_[c];
        s0 += vol;
        if (cells_[c]) s1 += vol * static_cast<long double>(cells_[c]->estimate());
    }
    if (s0 <= 0.0L) return 0.0;
    return static_cast<double>(s1 / s0);
}

std::size_t FatKleeSketch::space_counter() const {
    std::size_t total = 0;
    for (const auto& c : cells_)
        if (c) total += c->live_scalars();
    return total;
}

// ---------------------------------------------------------------- grid F0

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

GridF0Sketch::GridF0Sketch(std::int64_t n_per_axis, int d, double eps, std::uint64_t seed)
    : n_(n_per_axis), d_(d), seed_(seed) {
    if (d < 1) throw UsageError("grid dimension must be >= 1");
    if (n_per_axis < 1) throw UsageError("grid universe bound must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("grid epsilon must lie in (0,1)");
    double cells = std::pow(static_cast<double>(n_per_axis), d);
    if (cells > static_cast<double>(1 << 24))
        throw UniverseTooLarge("grid universe N^d exceeds 2^24 cells");
    k_ = static_cast<std::size_t>(std::ceil(4.0 / (eps * eps)));
}

void GridF0Sketch::update(const HyperRect& r) {
    require_dim(d_, r);
    std::vector<std::int64_t> lo(d_), hi(d_);
    for (int a = 0; a < d_; ++a) {
        double l = r.sides[a].lo, h = r.sides[a].hi;
        if (std::floor(l) != l) throw NonIntegerCorner(l);
        if (std::floor(h) != h) throw NonIntegerCorner(h);
        if (l < 0 || h > static_cast<double>(n_))
            throw Error(ErrorKind::Data, "grid rectangle outside [0,N]^d");
        lo[a] = static_cast<std::int64_t>(l);
        hi[a] = static_cast<std::int64_t>(h);
    }
    // Feed every unit cell [i, i+1) inside the box to the distinct counter.
    std::vector<std::int64_t> idx(lo);
    for (int a = 0; a < d_; ++a)
        if (lo[a] >= hi[a]) return;  // degenerate box covers no cell
    while (true) {
        std::uint64_t id = 0;
        for (int a = d_ - 1; a >= 0; --a)
            id = id * static_cast<std::uint64_t>(n_) + static_cast<std::uint64_t>(idx[a]);
        std::uint64_t h = splitmix64(id ^ seed_);
        if (registers_.size() < k_) {
            registers_.insert(h);
        } else if (h < *registers_.rbegin()) {
            auto [it, inserted] = registers_.insert(h);
            if (inserted) registers_.erase(std::prev(registers_.end()));
        }
        int a = 0;
        while (a < d_) {
            if (++idx[a] < hi[a]) break;
            idx[a] = lo[a];
            ++a;
        }
        if (a == d_) break;
    }
}

double GridF0Sketch::estimate() const {
    if (registers_.size() < k_) return static_cast<double>(registers_.size());
    double kth = static_cast<double>(*registers_.rbegin());
    return (static_cast<double>(k_) - 1.0) * 18446744073709551616.0 / kth;
}

// ---------------------------------------------------------------- wrappers

double klee_sample_estimate(const std::vector<HyperRect>& stream, int d, double eps, double rho,
                            std::uint64_t seed) {
    SamplerSketch sk(d, eps, rho, seed);
    for (const auto& r : stream) sk.update(r);
    return sk.estimate();
}

double klee_fat_estimate(const std::vector<HyperRect>& stream, int d, double eps, double delta) {
    FatKleeSketch sk(d, eps, delta);
    for (const auto& r : stream) sk.update(r);
    return sk.estimate();
}

double klee_grid_f0_estimate(const std::vector<HyperRect>& stream, std::int64_t n_per_axis, int d,
                             double eps, std::uint64_t seed) {
    GridF0Sketch sk(n_per_axis, d, eps, seed);
    for (const auto& r : stream) sk.update(r);
    return sk.estimate();
}

}  // namespace geosketch
