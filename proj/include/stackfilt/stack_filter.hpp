#ifndef STACKFILT_STACK_FILTER_HPP
#define STACKFILT_STACK_FILTER_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "stackfilt/image.hpp"

namespace stackfilt {

/// A stack filter: a monotone (positive) Boolean function over window
/// patterns, stored as a full truth table indexed by pattern value.
/// Bit i of a pattern is window position i in row-major order.
struct PositiveBooleanFunction {
    Window window;
    int levels = 255;
    std::vector<uint8_t> truth_table;  // length 2^(window.size())

    int arity() const { return window.size(); }
    uint8_t eval(uint32_t pattern) const { return truth_table[pattern]; }
};

/// Stacking property: tt respects the bitwise partial order.
bool is_monotone(const std::vector<uint8_t>& truth_table);
bool is_monotone(const PositiveBooleanFunction& f);

/// Majority vote over the window; the stack filter equal to the running
/// median of the same window.
PositiveBooleanFunction majority_filter(const Window& w, int levels = 255);

/// f(pattern) = center bit; the identity stack filter.
PositiveBooleanFunction center_projection(const Window& w, int levels = 255);

/// S_f(X) = sum over m of f applied to the thresholded slices. Computed
/// per pixel by binary-searching the largest m with f = 1, which is valid
/// because monotone f makes the slice outputs stack.
QuantizedImage apply(const QuantizedImage& img, const PositiveBooleanFunction& f);

/// Literal sum-over-thresholds evaluation, O(M) per pixel. Kept as the
/// independent reference for the binary-search path.
QuantizedImage apply_naive(const QuantizedImage& img, const PositiveBooleanFunction& f);

/// k-fold application; on_iteration, when set, receives each intermediate.
QuantizedImage iterate(const QuantizedImage& img, const PositiveBooleanFunction& f, int k,
                       const std::function<void(int, const QuantizedImage&)>& on_iteration = {});

/// Per-pattern penalty pair accumulated over all thresholds of a training
/// pair: c1[p] counts (pixel, threshold) events whose desired bit is 1
/// while the observed pattern is p; c0[p] the same for desired 0.
struct TrainingCosts {
    Window window;
    int levels = 255;
    std::vector<uint64_t> c0;
    std::vector<uint64_t> c1;

    explicit TrainingCosts(const Window& w, int levels_M = 255)
        : window(w), levels(levels_M),
          c0(size_t{1} << w.size(), 0), c1(size_t{1} << w.size(), 0) {}

    void merge(const TrainingCosts& other);
};

TrainingCosts accumulate_costs(const QuantizedImage& noisy, const QuantizedImage& desired,
                               const RegionOfInterest& roi, const Window& w);

/// Exact MAE-optimal monotone fit: minimum s-t cut on the Hasse diagram
/// of the pattern lattice (a closure problem). Among all optima returns
/// the pointwise-minimal truth table, which is unique.
PositiveBooleanFunction fit_monotone(const TrainingCosts& costs);

/// Total misfit of a truth table against a cost table.
uint64_t fit_cost(const std::vector<uint8_t>& truth_table, const TrainingCosts& costs);

/// Target statistic a region should be driven towards during training.
struct DesiredSpec {
    enum class Stat { Mean, Median, LowerQuartile, UpperQuartile, Constant };
    Stat stat = Stat::Mean;
    int constant_value = 0;  // used when stat == Constant
};

/// Scalar statistic of the noisy pixels under the ROI, on the integer
/// lattice. Mean rounds half-up; quantiles use the nearest-rank rule
/// rank = floor(q*N) + 1.
uint16_t roi_statistic(const QuantizedImage& noisy, const RegionOfInterest& roi,
                       const DesiredSpec& spec);

/// Desired image for training: every ROI pixel set to the region
/// statistic; pixels outside the ROI are left at 0 and never read.
QuantizedImage make_desired(const QuantizedImage& noisy, const RegionOfInterest& roi,
                            const DesiredSpec& spec);

struct TrainingRegion {
    RegionOfInterest roi;
    DesiredSpec spec;
};

/// Full training pipeline: per-region desired images, shared cost table,
/// exact monotone fit. Deterministic.
PositiveBooleanFunction train(const QuantizedImage& noisy,
                              const std::vector<TrainingRegion>& regions,
                              const Window& w);

/// Antichain of minimal true patterns; OR of ANDs over these patterns
/// reproduces the truth table exactly.
std::vector<uint32_t> to_dnf(const PositiveBooleanFunction& f);

/// STACKF text format (normative bit order: lowest pattern index is the
/// least significant bit of the hex number on line 4).
void write_filter(const PositiveBooleanFunction& f, std::ostream& out);
void write_filter(const PositiveBooleanFunction& f, const std::string& path);
PositiveBooleanFunction read_filter(std::istream& in);
PositiveBooleanFunction read_filter(const std::string& path);

}  // namespace stackfilt

#endif
