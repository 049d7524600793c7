#include "stackfilt/stack_filter.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include "stackfilt/errors.hpp"
#include "stackfilt/maxflow.hpp"

namespace stackfilt {

bool is_monotone(const std::vector<uint8_t>& truth_table) {
    const size_t size = truth_table.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw std::domain_error("is_monotone: table length must be a power of two");
    for (size_t p = 0; p < size; ++p)
        for (size_t bit = 1; bit < size; bit <<= 1)
            if (!(p & bit) && truth_table[p] > truth_table[p | bit])
                return false;
    return true;
}

bool is_monotone(const PositiveBooleanFunction& f) {
    return is_monotone(f.truth_table);
}

PositiveBooleanFunction majority_filter(const Window& w, int levels) {
    const int n = w.size();
    PositiveBooleanFunction f{w, levels, std::vector<uint8_t>(size_t{1} << n, 0)};
    for (uint32_t p = 0; p < (uint32_t{1} << n); ++p)
        f.truth_table[p] = std::popcount(p) * 2 > n ? 1 : 0;
    return f;
}

PositiveBooleanFunction center_projection(const Window& w, int levels) {
    const int n = w.size();
    const uint32_t center_bit = uint32_t{1} << (n / 2);
    PositiveBooleanFunction f{w, levels, std::vector<uint8_t>(size_t{1} << n, 0)};
    for (uint32_t p = 0; p < (uint32_t{1} << n); ++p)
        f.truth_table[p] = (p & center_bit) ? 1 : 0;
    return f;
}

namespace {

void gather_window(const QuantizedImage& img, int row, int col, const Window& w,
                   uint16_t* values) {
    const int hr = w.rows / 2, hc = w.cols / 2;
    int i = 0;
    for (int dr = -hr; dr <= hr; ++dr)
        for (int dc = -hc; dc <= hc; ++dc)
            values[i++] = img.at_clamped(row + dr, col + dc);
}

uint32_t pattern_at_threshold(const uint16_t* values, int n, int m) {
    uint32_t p = 0;
    for (int i = 0; i < n; ++i)
        if (values[i] >= m) p |= uint32_t{1} << i;
    return p;
}

void require_monotone(const PositiveBooleanFunction& f) {
    if (!is_monotone(f))
        throw ContractViolation("stack filter truth table lacks the stacking property");
}

}  // namespace

QuantizedImage apply(const QuantizedImage& img, const PositiveBooleanFunction& f) {
    require_monotone(f);
    const int n = f.arity();
    const int M = img.levels();
    QuantizedImage out(img.width(), img.height(), M);
    std::array<uint16_t, 25> values{};
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            gather_window(img, r, c, f.window, values.data());
            // f over the thresholded pattern is non-increasing in m, so the
            // output level is the largest m with f = 1.
            if (!f.eval(pattern_at_threshold(values.data(), n, 1))) {
                out.set(r, c, 0);
                continue;
            }
            int lo = 1, hi = M;  // invariant: f = 1 at lo
            while (lo < hi) {
                const int mid = lo + (hi - lo + 1) / 2;
                if (f.eval(pattern_at_threshold(values.data(), n, mid)))
                    lo = mid;
                else
                    hi = mid - 1;
            }
            out.set(r, c, static_cast<uint16_t>(lo));
        }
    return out;
}

QuantizedImage apply_naive(const QuantizedImage& img, const PositiveBooleanFunction& f) {
    require_monotone(f);
    const int n = f.arity();
    const int M = img.levels();
    QuantizedImage out(img.width(), img.height(), M);
    std::array<uint16_t, 25> values{};
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            gather_window(img, r, c, f.window, values.data());
            int sum = 0;
            for (int m = 1; m <= M; ++m)
                sum += f.eval(pattern_at_threshold(values.data(), n, m));
            out.set(r, c, static_cast<uint16_t>(sum));
        }
    return out;
}

QuantizedImage iterate(const QuantizedImage& img, const PositiveBooleanFunction& f, int k,
                       const std::function<void(int, const QuantizedImage&)>& on_iteration) {
    if (k < 1) throw std::domain_error("iterate: k must be >= 1");
    QuantizedImage current = img;
    for (int i = 1; i <= k; ++i) {
        current = apply(current, f);
        if (on_iteration) on_iteration(i, current);
    }
    return current;
}

void TrainingCosts::merge(const TrainingCosts& other) {
    if (!(window == other.window) || levels != other.levels)
        throw std::domain_error("TrainingCosts::merge: incompatible tables");
    for (size_t p = 0; p < c0.size(); ++p) {
        c0[p] += other.c0[p];
        c1[p] += other.c1[p];
    }
}

TrainingCosts accumulate_costs(const QuantizedImage& noisy, const QuantizedImage& desired,
                               const RegionOfInterest& roi, const Window& w) {
    if (!noisy.same_shape(desired) || noisy.levels() != desired.levels())
        throw std::domain_error("accumulate_costs: image dimension or level mismatch");
    roi.validate(noisy.width(), noisy.height());

    const int n = w.size();
    const int M = noisy.levels();
    TrainingCosts costs(w, M);
    std::array<uint16_t, 25> values{};

    roi.for_each_pixel([&](int row, int col) {
        gather_window(noisy, row, col, w, values.data());
        const uint16_t d = desired.at(row, col);
        // The pattern and the desired bit are piecewise constant in m;
        // walk the runs between breakpoints instead of all M thresholds.
        std::array<int, 27> breaks{};
        int nb = 0;
        breaks[nb++] = 1;
        for (int i = 0; i < n; ++i)
            if (values[i] + 1 >= 2 && values[i] + 1 <= M) breaks[nb++] = values[i] + 1;
        if (d + 1 >= 2 && d + 1 <= M) breaks[nb++] = d + 1;
        std::sort(breaks.begin(), breaks.begin() + nb);
        nb = static_cast<int>(std::unique(breaks.begin(), breaks.begin() + nb) - breaks.begin());

        for (int b = 0; b < nb; ++b) {
            const int lo = breaks[b];
            const int hi = (b + 1 < nb) ? breaks[b + 1] - 1 : M;
            const uint32_t p = pattern_at_threshold(values.data(), n, lo);
            const uint64_t run = static_cast<uint64_t>(hi - lo + 1);
            if (d >= lo)
                costs.c1[p] += run;
            else
                costs.c0[p] += run;
        }
    });
    return costs;
}

uint64_t fit_cost(const std::vector<uint8_t>& truth_table, const TrainingCosts& costs) {
    uint64_t total = 0;
    for (size_t p = 0; p < truth_table.size(); ++p)
        total += truth_table[p] ? costs.c0[p] : costs.c1[p];
    return total;
}

PositiveBooleanFunction fit_monotone(const TrainingCosts& costs) {
    const int n = costs.window.size();
    const uint32_t size = uint32_t{1} << n;
    const int source = static_cast<int>(size);
    const int sink = static_cast<int>(size) + 1;

    uint64_t inf = 1;
    for (uint32_t p = 0; p < size; ++p) inf += costs.c0[p] + costs.c1[p];

    MaxFlow flow(static_cast<int>(size) + 2);
    for (uint32_t p = 0; p < size; ++p) {
        if (costs.c1[p] > 0) flow.add_edge(source, static_cast<int>(p), costs.c1[p]);
        if (costs.c0[p] > 0) flow.add_edge(static_cast<int>(p), sink, costs.c0[p]);
        // Hasse edges enforce tt[p] <= tt[p | bit].
        for (int bit = 0; bit < n; ++bit)
            if (!(p & (uint32_t{1} << bit)))
                flow.add_edge(static_cast<int>(p), static_cast<int>(p | (uint32_t{1} << bit)), inf);
    }
    flow.solve(source, sink);
    const std::vector<uint8_t> side = flow.min_cut_source_side(source);

    PositiveBooleanFunction f{costs.window, costs.levels, std::vector<uint8_t>(size, 0)};
    for (uint32_t p = 0; p < size; ++p) f.truth_table[p] = side[p];
    return f;
}

uint16_t roi_statistic(const QuantizedImage& noisy, const RegionOfInterest& roi,
                       const DesiredSpec& spec) {
    roi.validate(noisy.width(), noisy.height());
    if (spec.stat == DesiredSpec::Stat::Constant) {
        if (spec.constant_value < 0 || spec.constant_value > noisy.levels())
            throw std::domain_error("roi_statistic: constant outside [0, levels]");
        return static_cast<uint16_t>(spec.constant_value);
    }
    // Overlapping rectangles contribute each pixel once.
    const std::vector<uint8_t> mask = roi.mask(noisy.width(), noisy.height());
    std::vector<uint16_t> vals;
    for (size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) vals.push_back(noisy.pixels()[i]);
    if (vals.empty()) throw std::domain_error("roi_statistic: empty ROI");

    if (spec.stat == DesiredSpec::Stat::Mean) {
        uint64_t sum = 0;
        for (uint16_t v : vals) sum += v;
        const double mean = static_cast<double>(sum) / static_cast<double>(vals.size());
        return static_cast<uint16_t>(std::floor(mean + 0.5));
    }
    double q = 0.5;
    if (spec.stat == DesiredSpec::Stat::LowerQuartile) q = 0.25;
    if (spec.stat == DesiredSpec::Stat::UpperQuartile) q = 0.75;
    std::sort(vals.begin(), vals.end());
    // Nearest-rank: rank = floor(q*N) + 1, 1-indexed.
    size_t rank = static_cast<size_t>(std::floor(q * static_cast<double>(vals.size()))) + 1;
    if (rank > vals.size()) rank = vals.size();
    return vals[rank - 1];
}

QuantizedImage make_desired(const QuantizedImage& noisy, const RegionOfInterest& roi,
                            const DesiredSpec& spec) {
    const uint16_t target = roi_statistic(noisy, roi, spec);
    QuantizedImage desired(noisy.width(), noisy.height(), noisy.levels());
    roi.for_each_pixel([&](int row, int col) { desired.set(row, col, target); });
    return desired;
}

PositiveBooleanFunction train(const QuantizedImage& noisy,
                              const std::vector<TrainingRegion>& regions,
                              const Window& w) {
    if (regions.empty()) throw std::domain_error("train: no training regions");
    TrainingCosts costs(w, noisy.levels());
    for (const TrainingRegion& region : regions) {
        const QuantizedImage desired = make_desired(noisy, region.roi, region.spec);
        costs.merge(accumulate_costs(noisy, desired, region.roi, w));
    }
    return fit_monotone(costs);
}

std::vector<uint32_t> to_dnf(const PositiveBooleanFunction& f) {
    require_monotone(f);
    std::vector<uint32_t> minimal;
    const uint32_t size = uint32_t{1} << f.arity();
    for (uint32_t p = 0; p < size; ++p) {
        if (!f.truth_table[p]) continue;
        bool is_minimal = true;
        for (uint32_t bit = 1; bit < size; bit <<= 1)
            if ((p & bit) && f.truth_table[p & ~bit]) {
                is_minimal = false;
                break;
            }
        if (is_minimal) minimal.push_back(p);
    }
    return minimal;
}

void write_filter(const PositiveBooleanFunction& f, std::ostream& out) {
    const size_t bits = size_t{1} << f.arity();
    const size_t digits = (bits + 3) / 4;
    static const char* kDigits = "0123456789abcdef";
    std::vector<uint8_t> nibbles(digits, 0);  // nibble 0 is the least significant
    for (size_t p = 0; p < bits; ++p)
        if (f.truth_table[p]) nibbles[p / 4] |= uint8_t(1 << (p % 4));
    std::string hex(digits, '0');
    for (size_t i = 0; i < digits; ++i) hex[digits - 1 - i] = kDigits[nibbles[i]];
    out << "STACKF 1\n";
    out << "window " << f.window.rows << " " << f.window.cols << "\n";
    out << "levels " << f.levels << "\n";
    out << hex << "\n";
    if (!out) throw std::runtime_error("write_filter: write failed");
}

void write_filter(const PositiveBooleanFunction& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_filter: cannot open " + path);
    write_filter(f, out);
}

PositiveBooleanFunction read_filter(std::istream& in) {
    std::string magic, version;
    if (!(in >> magic >> version) || magic != "STACKF" || version != "1")
        throw FormatError("filter: missing STACKF 1 header", 0);
    std::string key;
    int rows = 0, cols = 0, levels = 0;
    if (!(in >> key >> rows >> cols) || key != "window")
        throw FormatError("filter: expected window line", 0);
    if (!(in >> key >> levels) || key != "levels")
        throw FormatError("filter: expected levels line", 0);
    std::string hex;
    if (!(in >> hex)) throw FormatError("filter: missing truth table", 0);

    Window w(rows, cols);
    if (levels <= 0) throw FormatError("filter: non-positive levels", 0);
    const size_t bits = size_t{1} << w.size();
    const size_t digits = (bits + 3) / 4;
    if (hex.size() != digits)
        throw FormatError("filter: truth table must be " + std::to_string(digits) +
                          " hex digits, got " + std::to_string(hex.size()), 0);

    PositiveBooleanFunction f{w, levels, std::vector<uint8_t>(bits, 0)};
    for (size_t i = 0; i < digits; ++i) {
        const char ch = hex[digits - 1 - i];
        int v;
        if (ch >= '0' && ch <= '9') v = ch - '0';
        else if (ch >= 'a' && ch <= 'f') v = ch - 'a' + 10;
        else if (ch >= 'A' && ch <= 'F') v = ch - 'A' + 10;
        else throw FormatError("filter: invalid hex digit", 0);
        for (int b = 0; b < 4; ++b) {
            const size_t p = i * 4 + b;
            if (p < bits && (v & (1 << b))) f.truth_table[p] = 1;
        }
    }
    return f;
}

PositiveBooleanFunction read_filter(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("filter: cannot open " + path, 0);
    return read_filter(in);
}

}  // namespace stackfilt
