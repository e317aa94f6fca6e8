#pragma once

#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "geosketch/errors.hpp"
#include "geosketch/geometry.hpp"

namespace geosketch {

enum class StreamKind { Intervals, Rects, Points, LabeledPoints, Halfplanes };

// One-pass item source. Replayable sources yield the identical sequence on
// every pass; the item count is only known after exhaustion.
template <typename Item>
class StreamSource {
public:
    virtual ~StreamSource() = default;
    virtual void reset() = 0;
    virtual std::optional<Item> next() = 0;
    virtual bool replayable() const = 0;
};

template <typename Item>
class VectorSource final : public StreamSource<Item> {
public:
    explicit VectorSource(std::vector<Item> items) : items_(std::move(items)) {}

    void reset() override { pos_ = 0; }
    std::optional<Item> next() override {
        if (pos_ >= items_.size()) return std::nullopt;
        return items_[pos_++];
    }
    bool replayable() const override { return true; }

private:
    std::vector<Item> items_;
    std::size_t pos_ = 0;
};

// Line-by-line parsers; `d` only matters for Rects.
Interval parse_interval_line(const std::string& line, std::size_t lineno);
HyperRect parse_rect_line(const std::string& line, std::size_t lineno, int d);
double parse_point_line(const std::string& line, std::size_t lineno);
LabeledPoint parse_labeled_point_line(const std::string& line, std::size_t lineno);
Halfplane parse_halfplane_line(const std::string& line, std::size_t lineno);

// True for lines the stream grammar ignores (blank or starting with '#').
bool is_skippable_line(const std::string& line);

// Whole-file parsers. Report the offending line number on failure.
std::vector<Interval> parse_intervals(const std::string& path);
std::vector<HyperRect> parse_rects(const std::string& path, int d);  // d<=0: infer from first line
std::vector<double> parse_points(const std::string& path);
std::vector<LabeledPoint> parse_labeled_points(const std::string& path);
std::vector<Halfplane> parse_halfplanes(const std::string& path);

// Re-reads the file on every pass; one-pass honest and replayable.
template <typename Item>
class FileSource final : public StreamSource<Item> {
public:
    using LineParser = std::function<Item(const std::string&, std::size_t)>;

    FileSource(std::string path, LineParser parse) : path_(std::move(path)), parse_(std::move(parse)) {
        reset();
    }

    void reset() override {
        in_ = std::ifstream(path_);
        if (!in_) throw Error(ErrorKind::Data, "cannot open stream file: " + path_);
        lineno_ = 0;
    }

    std::optional<Item> next() override {
        std::string line;
        while (std::getline(in_, line)) {
            ++lineno_;
            if (is_skippable_line(line)) continue;
            return parse_(line, lineno_);
        }
        return std::nullopt;
    }

    bool replayable() const override { return true; }

private:
    std::string path_;
    LineParser parse_;
    std::ifstream in_;
    std::size_t lineno_ = 0;
};

// One-pass additive solver: after a full pass, estimate() is within the
// construction-time tolerance of the true optimum on its guarantee domain.
template <typename Item>
class AdditiveSolver {
public:
    virtual ~AdditiveSolver() = default;
    virtual void update(const Item& item) = 0;
    virtual double estimate() const = 0;
};

template <typename Item>
using AdditiveSolverFactory = std::function<std::unique_ptr<AdditiveSolver<Item>>(double eps)>;

struct MultipassResult {
    double value = 0.0;
    int passes = 0;
};

// Additive-to-multiplicative driver. Pass k runs the factory at eps/2^k and
// stops at the first estimate O_k with O_k >= 2^-k + eps/2^k; the returned
// value is then within eps*O of the true optimum O, using at most
// ceil(log2((1+2*eps)/O)) passes.
template <typename Item>
MultipassResult multipass_multiplicative(const AdditiveSolverFactory<Item>& factory,
                                         StreamSource<Item>& source, double eps,
                                         int max_passes = 40) {
    if (!(eps > 0.0 && eps < 1.0)) throw UsageError("multipass epsilon must lie in (0,1)");
    if (!source.replayable()) throw Error(ErrorKind::Data, "multipass requires a replayable source");
    double eps_k = eps;
    double threshold = 1.0;
    for (int k = 1; k <= max_passes; ++k) {
        eps_k /= 2.0;       // eps / 2^k
        threshold /= 2.0;   // 1 / 2^k
        auto solver = factory(eps_k);
        source.reset();
        while (auto item = source.next()) solver->update(*item);
        double estimate = solver->estimate();
        if (estimate >= threshold + eps_k) return {estimate, k};
    }
    throw PassBudgetExceeded(max_passes);
}

}  // namespace geosketch
