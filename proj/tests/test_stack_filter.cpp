#include <doctest.h>

#include <algorithm>
#include <sstream>
#include <vector>

#include "stackfilt/errors.hpp"
#include "stackfilt/rng.hpp"
#include "stackfilt/stack_filter.hpp"

using namespace stackfilt;

namespace {

QuantizedImage random_image(int w, int h, int levels, uint64_t seed) {
    Rng rng(seed);
    QuantizedImage img(w, h, levels);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            img.set(r, c, static_cast<uint16_t>(rng.next_u64() % (levels + 1)));
    return img;
}

// Random monotone table: close a random set of seed patterns upward.
std::vector<uint8_t> random_monotone_table(int n, uint64_t seed, int seeds = 6) {
    Rng rng(seed);
    const uint32_t size = uint32_t{1} << n;
    std::vector<uint8_t> tt(size, 0);
    for (int s = 0; s < seeds; ++s) tt[rng.next_u64() % size] = 1;
    for (uint32_t p = 0; p < size; ++p)
        if (tt[p])
            for (uint32_t bit = 1; bit < size; bit <<= 1) tt[p | bit] |= tt[p];
    // One upward sweep is not enough in general; iterate to the closure.
    bool changed = true;
    while (changed) {
        changed = false;
        for (uint32_t p = 0; p < size; ++p)
            if (tt[p])
                for (uint32_t bit = 1; bit < size; bit <<= 1)
                    if (!tt[p | bit]) {
                        tt[p | bit] = 1;
                        changed = true;
                    }
    }
    return tt;
}

// Direct 3x3 median with edge replication; the oracle for majority-of-9.
QuantizedImage median3x3(const QuantizedImage& img) {
    QuantizedImage out(img.width(), img.height(), img.levels());
    for (int r = 0; r < img.height(); ++r)
        for (int c = 0; c < img.width(); ++c) {
            std::vector<uint16_t> v;
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc)
                    v.push_back(img.at_clamped(r + dr, c + dc));
            std::sort(v.begin(), v.end());
            out.set(r, c, v[4]);
        }
    return out;
}

// All monotone truth tables of n variables, by exhaustive filtering.
std::vector<std::vector<uint8_t>> all_monotone_tables(int n) {
    const uint32_t size = uint32_t{1} << n;
    std::vector<std::vector<uint8_t>> result;
    for (uint64_t bits = 0; bits < (uint64_t{1} << size); ++bits) {
        std::vector<uint8_t> tt(size);
        for (uint32_t p = 0; p < size; ++p) tt[p] = (bits >> p) & 1;
        if (is_monotone(tt)) result.push_back(std::move(tt));
    }
    return result;
}

}  // namespace

TEST_CASE("majority is monotone, parity is not") {
    CHECK(is_monotone(majority_filter(Window(3, 3)).truth_table));
    std::vector<uint8_t> parity(8);
    for (uint32_t p = 0; p < 8; ++p) parity[p] = __builtin_popcount(p) & 1;
    CHECK_FALSE(is_monotone(parity));
}

TEST_CASE("random up-set closures are monotone") {
    for (uint64_t seed = 0; seed < 20; ++seed)
        CHECK(is_monotone(random_monotone_table(9, seed)));
}

TEST_CASE("majority-of-9 stack filter equals the 3x3 median") {
    const PositiveBooleanFunction f = majority_filter(Window(3, 3), 63);
    for (uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL}) {
        const QuantizedImage img = random_image(16, 12, 63, seed);
        CHECK(apply(img, f) == median3x3(img));
    }
}

TEST_CASE("center projection is the identity filter") {
    const PositiveBooleanFunction f = center_projection(Window(3, 3), 100);
    const QuantizedImage img = random_image(10, 10, 100, 5);
    CHECK(apply(img, f) == img);
}

TEST_CASE("binary-search apply equals naive threshold-sum apply") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        PositiveBooleanFunction f{Window(3, 3), 63, random_monotone_table(9, seed)};
        const QuantizedImage img = random_image(16, 16, 63, seed + 100);
        CHECK(apply(img, f) == apply_naive(img, f));
    }
}

TEST_CASE("apply rejects non-monotone functions") {
    PositiveBooleanFunction f{Window(3, 3), 255, std::vector<uint8_t>(512, 0)};
    f.truth_table[0] = 1;  // 1 at bottom, 0 above: not monotone
    CHECK_THROWS_AS(apply(random_image(4, 4, 255, 1), f), ContractViolation);
}

TEST_CASE("stacking commutation: thresholding commutes with the filter") {
    PositiveBooleanFunction f{Window(3, 3), 31, random_monotone_table(9, 77)};
    const QuantizedImage img = random_image(12, 12, 31, 78);
    const QuantizedImage filtered = apply(img, f);
    for (int m = 1; m <= 31; ++m) {
        const BinaryImage slice = threshold(img, m);
        const BinaryImage expected = threshold(filtered, m);
        for (int r = 0; r < img.height(); ++r)
            for (int c = 0; c < img.width(); ++c)
                CHECK(expected.at(r, c) ==
                      f.eval(window_pattern(slice, r, c, f.window)));
    }
}

TEST_CASE("apply is increasing in its input") {
    PositiveBooleanFunction f{Window(3, 3), 31, random_monotone_table(9, 5)};
    Rng rng(6);
    QuantizedImage x = random_image(10, 10, 31, 7);
    QuantizedImage y = x;
    for (int r = 0; r < 10; ++r)
        for (int c = 0; c < 10; ++c)
            y.set(r, c, static_cast<uint16_t>(
                            std::min<uint32_t>(31, y.at(r, c) + rng.next_u64() % 4)));
    const QuantizedImage fx = apply(x, f);
    const QuantizedImage fy = apply(y, f);
    for (size_t i = 0; i < fx.pixels().size(); ++i)
        CHECK(fx.pixels()[i] <= fy.pixels()[i]);
}

TEST_CASE("apply commutes with in-range level shifts") {
    // Needs a non-constant f with f(bottom)=0 and f(top)=1.
    PositiveBooleanFunction f = majority_filter(Window(3, 3), 40);
    const QuantizedImage x = random_image(8, 8, 40, 9);  // values up to 40
    QuantizedImage clipped(8, 8, 40);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            clipped.set(r, c, static_cast<uint16_t>(std::min<int>(x.at(r, c), 30)));
    const int shift = 10;
    QuantizedImage shifted(8, 8, 40);
    for (int r = 0; r < 8; ++r)
        for (int c = 0; c < 8; ++c)
            shifted.set(r, c, static_cast<uint16_t>(clipped.at(r, c) + shift));
    const QuantizedImage base = apply(clipped, f);
    const QuantizedImage moved = apply(shifted, f);
    for (size_t i = 0; i < base.pixels().size(); ++i)
        CHECK(moved.pixels()[i] == base.pixels()[i] + shift);
}

TEST_CASE("cost accumulation: single pixel, M=2") {
    QuantizedImage noisy(1, 1, 2, std::vector<uint16_t>{1});
    QuantizedImage desired(1, 1, 2, std::vector<uint16_t>{2});
    RegionOfInterest roi;
    roi.rects.push_back({0, 0, 1, 1});
    const TrainingCosts costs = accumulate_costs(noisy, desired, roi, Window(1, 1));
    uint64_t total = 0;
    for (size_t p = 0; p < costs.c0.size(); ++p) total += costs.c0[p] + costs.c1[p];
    CHECK(total == 2);  // one pixel, two thresholds
}

TEST_CASE("cost accumulation matches a brute-force recount") {
    const QuantizedImage noisy = random_image(8, 8, 15, 31);
    const QuantizedImage desired = random_image(8, 8, 15, 32);
    RegionOfInterest roi;
    roi.rects.push_back({1, 1, 6, 6});
    const Window w(3, 3);
    const TrainingCosts costs = accumulate_costs(noisy, desired, roi, w);

    TrainingCosts expected(w, 15);
    for (int m = 1; m <= 15; ++m) {
        const BinaryImage slice = threshold(noisy, m);
        const BinaryImage want = threshold(desired, m);
        roi.for_each_pixel([&](int r, int c) {
            const uint32_t p = window_pattern(slice, r, c, w);
            if (want.at(r, c))
                ++expected.c1[p];
            else
                ++expected.c0[p];
        });
    }
    CHECK(costs.c0 == expected.c0);
    CHECK(costs.c1 == expected.c1);
}

TEST_CASE("self-training reaches zero cost") {
    const QuantizedImage img = random_image(10, 10, 31, 55);
    RegionOfInterest roi;
    roi.rects.push_back({1, 1, 8, 8});
    const TrainingCosts costs = accumulate_costs(img, img, roi, Window(3, 3));
    const PositiveBooleanFunction f = fit_monotone(costs);
    CHECK(fit_cost(f.truth_table, costs) == 0);
    CHECK(is_monotone(f));
}

TEST_CASE("fit picks the cheapest monotone up-set") {
    TrainingCosts costs(Window(3, 3), 255);
    costs.c1[511] = 5;  // only the all-ones pattern wants output 1
    const PositiveBooleanFunction f = fit_monotone(costs);
    for (uint32_t p = 0; p < 512; ++p) CHECK(f.truth_table[p] == (p == 511 ? 1 : 0));
}

TEST_CASE("n=3 fit equals the exhaustive minimum over all 20 monotone functions") {
    const auto tables = all_monotone_tables(3);
    CHECK(tables.size() == 20);  // Dedekind number for n=3
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        TrainingCosts costs(Window(1, 3), 255);
        for (uint32_t p = 0; p < 8; ++p) {
            costs.c0[p] = rng.next_u64() % 50;
            costs.c1[p] = rng.next_u64() % 50;
        }
        const PositiveBooleanFunction f = fit_monotone(costs);
        CHECK(is_monotone(f));
        uint64_t best = UINT64_MAX;
        for (const auto& tt : tables) best = std::min(best, fit_cost(tt, costs));
        CHECK(fit_cost(f.truth_table, costs) == best);
        // Pointwise-minimal optimum: no optimal table sits strictly below.
        for (const auto& tt : tables) {
            if (fit_cost(tt, costs) != best) continue;
            for (uint32_t p = 0; p < 8; ++p)
                CHECK(f.truth_table[p] <= tt[p]);
        }
    }
}

TEST_CASE("fit cost never exceeds majority or center projection") {
    Rng rng(81);
    for (int trial = 0; trial < 20; ++trial) {
        TrainingCosts costs(Window(3, 3), 255);
        for (uint32_t p = 0; p < 512; ++p) {
            costs.c0[p] = rng.next_u64() % 100;
            costs.c1[p] = rng.next_u64() % 100;
        }
        const PositiveBooleanFunction f = fit_monotone(costs);
        CHECK(fit_cost(f.truth_table, costs) <=
              fit_cost(majority_filter(Window(3, 3)).truth_table, costs));
        CHECK(fit_cost(f.truth_table, costs) <=
              fit_cost(center_projection(Window(3, 3)).truth_table, costs));
    }
}

TEST_CASE("roi statistics on the integer lattice") {
    QuantizedImage img(4, 1, 255, std::vector<uint16_t>{1, 2, 3, 4});
    RegionOfInterest roi;
    roi.rects.push_back({0, 0, 4, 1});
    CHECK(roi_statistic(img, roi, {DesiredSpec::Stat::Mean, 0}) == 3);  // 2.5 rounds up
    CHECK(roi_statistic(img, roi, {DesiredSpec::Stat::Constant, 7}) == 7);

    std::vector<uint16_t> ramp(100);
    for (int i = 0; i < 100; ++i) ramp[i] = static_cast<uint16_t>(i);
    QuantizedImage big(100, 1, 255, std::move(ramp));
    RegionOfInterest all;
    all.rects.push_back({0, 0, 100, 1});
    CHECK(roi_statistic(big, all, {DesiredSpec::Stat::LowerQuartile, 0}) == 25);
    CHECK(roi_statistic(big, all, {DesiredSpec::Stat::Median, 0}) == 50);
    CHECK(roi_statistic(big, all, {DesiredSpec::Stat::UpperQuartile, 0}) == 75);
}

TEST_CASE("make_desired fills the roi with the statistic") {
    QuantizedImage img(4, 1, 255, std::vector<uint16_t>{1, 2, 3, 4});
    RegionOfInterest roi;
    roi.rects.push_back({0, 0, 4, 1});
    const QuantizedImage d = make_desired(img, roi, {DesiredSpec::Stat::Mean, 0});
    for (int c = 0; c < 4; ++c) CHECK(d.at(0, c) == 3);
}

TEST_CASE("training on a constant image fixes that constant") {
    QuantizedImage img(8, 8, 255, 42);
    RegionOfInterest roi;
    roi.rects.push_back({0, 0, 8, 8});
    const PositiveBooleanFunction f =
        train(img, {{roi, {DesiredSpec::Stat::Mean, 0}}}, Window(3, 3));
    CHECK(apply(img, f) == img);
}

TEST_CASE("self-consistent training admits a zero-cost optimum") {
    const QuantizedImage img = random_image(12, 12, 31, 91);
    RegionOfInterest roi;
    roi.rects.push_back({1, 1, 10, 10});
    const TrainingCosts costs = accumulate_costs(img, img, roi, Window(3, 3));
    // Center projection reproduces the image, so its cost is 0; the fit
    // must reach 0 too (and return the minimal such function).
    CHECK(fit_cost(center_projection(Window(3, 3)).truth_table, costs) == 0);
    CHECK(fit_cost(fit_monotone(costs).truth_table, costs) == 0);
}

TEST_CASE("iterate: k=1 equals apply, median reaches a root signal") {
    PositiveBooleanFunction f = majority_filter(Window(3, 3), 1);
    QuantizedImage img(16, 16, 1);
    Rng rng(3);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c)
            img.set(r, c, static_cast<uint16_t>(rng.next_u64() & 1));
    CHECK(iterate(img, f, 1) == apply(img, f));

    QuantizedImage current = img;
    QuantizedImage next = apply(current, f);
    int steps = 0;
    while (!(next == current) && steps < 64) {
        current = next;
        next = apply(current, f);
        ++steps;
    }
    CHECK(next == current);          // fixed point reached
    CHECK(apply(next, f) == next);   // further iterations are the identity
    CHECK_THROWS_AS(iterate(img, f, 0), std::domain_error);
}

TEST_CASE("dnf of majority-of-3 is the three pair patterns") {
    const Window w(1, 3);
    const auto dnf = to_dnf(majority_filter(w, 255));
    CHECK(dnf == std::vector<uint32_t>{0b011, 0b101, 0b110});
}

TEST_CASE("dnf of the center projection is the lone center bit") {
    const auto dnf = to_dnf(center_projection(Window(3, 3), 255));
    CHECK(dnf == std::vector<uint32_t>{uint32_t{1} << 4});
}

TEST_CASE("dnf evaluation reproduces the truth table exactly") {
    for (uint64_t seed = 0; seed < 5; ++seed) {
        PositiveBooleanFunction f{Window(3, 3), 255, random_monotone_table(9, seed + 40)};
        const auto dnf = to_dnf(f);
        for (uint32_t p = 0; p < 512; ++p) {
            bool val = false;
            for (uint32_t term : dnf)
                if ((p & term) == term) {
                    val = true;
                    break;
                }
            CHECK(val == (f.truth_table[p] != 0));
        }
    }
}

TEST_CASE("filter file round-trip") {
    PositiveBooleanFunction f{Window(3, 3), 255, random_monotone_table(9, 17)};
    std::stringstream buf;
    write_filter(f, buf);
    const PositiveBooleanFunction g = read_filter(buf);
    CHECK(g.window == f.window);
    CHECK(g.levels == f.levels);
    CHECK(g.truth_table == f.truth_table);
}

TEST_CASE("filter file rejects malformed content") {
    std::stringstream bad1("NOTSTACKF 1\n");
    CHECK_THROWS_AS(read_filter(bad1), FormatError);
    std::stringstream bad2("STACKF 1\nwindow 3 3\nlevels 255\nzz\n");
    CHECK_THROWS_AS(read_filter(bad2), FormatError);
}
